//! Built-in refined series and volume profiles.

use super::{
    BoundaryDivisor, CurveKind, FixedPart, GitClass, RefinedSeries, TargetKind, TargetModel,
    ZariskiVolProfile,
};
use crate::error::{Error, Result};
use crate::ratpoly::{int, rat, Interval, PiecewisePoly, Poly, Rational};

pub const BUILTIN_NAMES: [&str; 6] = [
    "conic-P2",
    "MM2.28",
    "MM3.14",
    "MM2.23a0",
    "MM2.23b",
    "p2-wt21-profile",
];

#[derive(Clone, Debug, PartialEq)]
pub enum CatalogEntry {
    Series(RefinedSeries),
    Profile(ZariskiVolProfile),
}

pub fn builtin(name: &str) -> Result<CatalogEntry> {
    match name {
        "conic-P2" => Ok(CatalogEntry::Series(conic_p2(&rat(1, 2)))),
        "MM2.28" => Ok(CatalogEntry::Series(cubic_threefold("MM2.28", int(3)))),
        "MM3.14" => Ok(CatalogEntry::Series(cubic_threefold("MM3.14", int(1)))),
        "MM2.23a0" => Ok(CatalogEntry::Series(mm2_23a0())),
        "MM2.23b" => Ok(CatalogEntry::Series(mm2_23b())),
        "p2-wt21-profile" => Ok(CatalogEntry::Profile(p2_weighted_blowup_profile())),
        other => Err(Error::UnknownName(other.to_string())),
    }
}

pub fn builtin_series(name: &str) -> Result<RefinedSeries> {
    match builtin(name)? {
        CatalogEntry::Series(s) => Ok(s),
        CatalogEntry::Profile(_) => Err(Error::UnknownName(format!(
            "{name} is a profile, not a series"
        ))),
    }
}

pub fn builtin_profile(name: &str) -> Result<ZariskiVolProfile> {
    match builtin(name)? {
        CatalogEntry::Profile(z) => Ok(z),
        CatalogEntry::Series(_) => Err(Error::UnknownName(format!(
            "{name} is a series, not a profile"
        ))),
    }
}

fn lin(c0: Rational, c1: Rational) -> Poly {
    Poly::linear(c0, c1)
}

fn segments(parts: Vec<(Rational, Rational, Poly)>) -> PiecewisePoly {
    PiecewisePoly::from_segments(parts).expect("catalog segments tile their interval")
}

fn interval(lo: Rational, hi: Rational) -> Interval {
    Interval::new(lo, hi).expect("catalog interval")
}

/// Refinement of `O(1)` on P² by the (2,1)-weighted blowup divisor `E ≅ P¹`,
/// stored over `t ∈ [0, 2]` with `α = t − 1`, scaled by `3 − 2c` to refine
/// `−(K + cQ)`.
pub fn conic_p2(c: &Rational) -> RefinedSeries {
    let f = segments(vec![
        (int(0), int(1), lin(int(0), rat(1, 2))),
        (int(1), int(2), lin(int(1), rat(-1, 2))),
    ]);
    let k = segments(vec![
        (int(0), int(1), Poly::zero()),
        (int(1), int(2), lin(int(-1), int(1))),
    ]);
    let boundary =
        BoundaryDivisor::new([("p0".to_string(), rat(1, 2)), ("p2".to_string(), c.clone())]);
    RefinedSeries::from_parts(
        "conic-P2",
        interval(int(0), int(2)),
        f,
        vec![FixedPart {
            label: "p1".into(),
            k,
            degree: int(1),
        }],
        TargetModel::proj_line(boundary),
    )
    .with_origin(int(1))
    .with_scale(int(3) - c * int(2))
}

/// Re-parameterizes a conic-type series: sets the coefficient of `p2` to `c`
/// and the anticanonical scale to `3 − 2c`.
pub fn set_conic_parameter(s: &RefinedSeries, c: &Rational) -> Result<RefinedSeries> {
    let mut out = s.clone();
    let TargetKind::ProjLine { boundary } = &mut out.target.kind else {
        return Err(Error::PreconditionFailed(format!(
            "{} does not live on P¹",
            s.name
        )));
    };
    let point = boundary
        .points
        .iter_mut()
        .find(|p| p.label == "p2")
        .ok_or_else(|| Error::UnknownPoint("p2".into()))?;
    point.coeff = c.clone();
    out.scale = int(3) - c * int(2);
    Ok(out)
}

/// Refinement of `−K` by the strict transform of the plane containing a cubic
/// curve: `O(3+2α)` on `[−1, 0]`, `O(3−α) + α·C` on `[0, α₀]`.
fn cubic_threefold(name: &str, alpha0: Rational) -> RefinedSeries {
    let f = segments(vec![
        (int(-1), int(0), lin(int(3), int(2))),
        (int(0), alpha0.clone(), lin(int(3), int(-1))),
    ]);
    let k = segments(vec![
        (int(-1), int(0), Poly::zero()),
        (int(0), alpha0.clone(), Poly::monomial(1)),
    ]);
    RefinedSeries::from_parts(
        name,
        interval(int(-1), alpha0),
        f,
        vec![FixedPart {
            label: "C".into(),
            k,
            degree: int(3),
        }],
        TargetModel::proj_plane(CurveKind::PlaneCubic {
            git_class: GitClass::Stable,
        }),
    )
    .with_shifts(vec![int(1)])
}

fn mm2_23a0() -> RefinedSeries {
    let f = segments(vec![
        (int(-1), int(0), lin(int(2), int(1))),
        (int(0), int(2), lin(int(2), int(-1))),
    ]);
    let k = segments(vec![
        (int(-1), int(0), Poly::zero()),
        (int(0), int(2), Poly::monomial(1)),
    ]);
    RefinedSeries::from_parts(
        "MM2.23a0",
        interval(int(-1), int(2)),
        f,
        vec![FixedPart {
            label: "C".into(),
            k,
            degree: int(4),
        }],
        TargetModel::quadric(CurveKind::Biconic {
            git_class: GitClass::Stable,
        }),
    )
    .with_shifts(vec![int(1)])
}

fn mm2_23b() -> RefinedSeries {
    let f = segments(vec![
        (int(-3), int(-2), lin(int(3), int(1))),
        (int(-2), int(1), lin(rat(5, 3), rat(1, 3))),
        (int(1), int(3), lin(int(3), int(-1))),
    ]);
    let k = segments(vec![
        (int(-3), int(-2), Poly::zero()),
        (int(-2), int(1), lin(rat(2, 3), rat(1, 3))),
        (int(1), int(3), Poly::monomial(1)),
    ]);
    RefinedSeries::from_parts(
        "MM2.23b",
        interval(int(-3), int(3)),
        f,
        vec![FixedPart {
            label: "C2".into(),
            k,
            degree: int(2),
        }],
        TargetModel::proj_plane(CurveKind::Conic),
    )
}

/// `vol(O(1) − tE)` for the (2,1)-weighted blowup of P²: `1 − t²/2` while
/// ample, `(2 − t)²/2` after the line splits off.
fn p2_weighted_blowup_profile() -> ZariskiVolProfile {
    ZariskiVolProfile {
        name: "p2-wt21-profile".into(),
        vol_of_l: int(1),
        profile: segments(vec![
            (int(0), int(1), Poly::new(vec![int(1), int(0), rat(-1, 2)])),
            (
                int(1),
                int(2),
                lin(int(2), int(-1)).pow(2).scale(&rat(1, 2)),
            ),
        ]),
        threshold: int(2),
    }
}
