//! Stability decisions: Li's criterion on P¹, the surface bridges, and the
//! weighted verdict built on them.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::invariants::{lambda_fixed, LabeledValue, LambdaFixed};
use crate::ratpoly::{format_rational, int, rat, Rational, Scalar};
use crate::series::{BoundaryDivisor, CurveKind, GitClass, RefinedSeries, TargetKind};
use crate::weights::{futaki_g, weight_condition, WeightSpec};

/// Relative tolerance for comparisons of floating-point invariants.
pub const COMPARE_TOL: f64 = 1e-12;

/// Relative size of `∫ α g vol` accepted as a vanishing Futaki invariant.
pub const WEIGHT_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Level {
    KStable,
    KPolystable,
    KSemistableNotPolystable,
    KUnstable,
}

impl Level {
    pub fn as_str(self) -> &'static str {
        match self {
            Level::KStable => "KStable",
            Level::KPolystable => "KPolystable",
            Level::KSemistableNotPolystable => "KSemistableNotPolystable",
            Level::KUnstable => "KUnstable",
        }
    }

    pub fn is_semistable(self) -> bool {
        self != Level::KUnstable
    }

    /// Process exit code reporting this level.
    pub fn exit_code(self) -> i32 {
        match self {
            Level::KStable | Level::KPolystable => 0,
            Level::KSemistableNotPolystable => 4,
            Level::KUnstable => 5,
        }
    }

    fn rank(self) -> u8 {
        match self {
            Level::KUnstable => 0,
            Level::KSemistableNotPolystable => 1,
            Level::KPolystable => 2,
            Level::KStable => 3,
        }
    }

    /// `KUnstable < KSemistableNotPolystable < KPolystable < KStable`.
    pub fn cmp_strength(self, other: Level) -> Ordering {
        self.rank().cmp(&other.rank())
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Evidence for Li's criterion on a boundary of P¹.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LiCertificate {
    /// Points with nonzero coefficient.
    pub coefficients: Vec<LabeledValue>,
    pub total: Scalar,
    /// `min_i (Σ_{j≠i} a_j − a_i)`; absent for an empty boundary.
    pub slack: Option<Scalar>,
    /// Label attaining the slack.
    pub tight_point: Option<String>,
    /// `2·min(1, min_i(1 − a_i)) / (2 − Σa)`.
    pub delta: Scalar,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    Li(LiCertificate),
    WeightedLine {
        lambda: Scalar,
        mus: Vec<LabeledValue>,
        /// Level of the pair `(P¹, Δ + F)`.
        model_level: Level,
        li: LiCertificate,
    },
    Conic {
        lambda: Scalar,
        mu: Scalar,
        #[serde(with = "crate::ratpoly::rational::serde_rational")]
        threshold: Rational,
    },
    CurveGit {
        lambda: Scalar,
        mu: Scalar,
        curve: &'static str,
        git_class: GitClass,
    },
    ThreePoints {
        multiplicities: [u64; 3],
        recomputed: Box<Verdict>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub level: Level,
    pub certificate: Certificate,
}

fn li_scalar(points: Vec<LabeledValue>) -> Result<Verdict> {
    let points: Vec<LabeledValue> = points.into_iter().filter(|p| !p.value.is_zero()).collect();
    let zero = Scalar::Exact(Rational::zero());
    let one = Scalar::Exact(Rational::one());
    let two = Scalar::Exact(int(2));
    for p in &points {
        if p.value.compare(&zero) == Ordering::Less || p.value.compare(&one) != Ordering::Less {
            return Err(Error::NotLogFano(format!(
                "coefficient of {} is {}, outside [0, 1)",
                p.label, p.value
            )));
        }
    }
    let total = points
        .iter()
        .fold(zero.clone(), |acc, p| acc + p.value.clone());
    if total.compare(&two) != Ordering::Less {
        return Err(Error::NotLogFano(format!("boundary degree {total} ≥ 2")));
    }

    let mut slack: Option<(Scalar, String)> = None;
    let mut largest = zero.clone();
    for p in &points {
        let here = total.clone() - p.value.clone() * two.clone();
        if slack
            .as_ref()
            .is_none_or(|(s, _)| here.compare(s) == Ordering::Less)
        {
            slack = Some((here, p.label.clone()));
        }
        largest = larger(largest, &p.value);
    }
    let delta = (one.clone() - largest).min(one.clone()) * two.clone() / (two - total.clone());

    let level = match &slack {
        None => Level::KPolystable,
        Some((s, _)) => match s.compare_tol(&zero, COMPARE_TOL) {
            Ordering::Greater => Level::KStable,
            Ordering::Less => Level::KUnstable,
            Ordering::Equal => {
                let symmetric_pair = points.len() == 2
                    && points[0].value.compare_tol(&points[1].value, COMPARE_TOL)
                        == Ordering::Equal;
                if symmetric_pair {
                    Level::KPolystable
                } else {
                    Level::KSemistableNotPolystable
                }
            }
        },
    };
    let (slack, tight_point) = match slack {
        Some((s, label)) => (Some(s), Some(label)),
        None => (None, None),
    };
    Ok(Verdict {
        level,
        certificate: Certificate::Li(LiCertificate {
            coefficients: points,
            total,
            slack,
            tight_point,
            delta,
        }),
    })
}

fn larger(a: Scalar, b: &Scalar) -> Scalar {
    if b.compare(&a) == Ordering::Greater {
        b.clone()
    } else {
        a
    }
}

/// Li's criterion for `(P¹, Σ a_i p_i)`: K-stable iff `a_i < Σ_{j≠i} a_j` for
/// every `i`, K-semistable iff the same holds with `≤`. Among semistable
/// boundaries, the empty one and two points of equal weight are K-polystable.
pub fn li_p1(boundary: &BoundaryDivisor) -> Result<Verdict> {
    li_scalar(
        boundary
            .points
            .iter()
            .map(|p| LabeledValue {
                label: p.label.clone(),
                value: Scalar::Exact(p.coeff.clone()),
            })
            .collect(),
    )
}

fn check_weight(s: &RefinedSeries, g: &WeightSpec) -> Result<()> {
    g.check_positive(&s.moment_alpha())?;
    let wc = weight_condition(s, g)?;
    if wc.first_moment.is_zero() || (!wc.first_moment.is_exact() && wc.relative <= WEIGHT_TOL) {
        Ok(())
    } else {
        Err(Error::NotAWeight {
            futaki: futaki_g(s, g)?.to_f64(),
            relative: wc.relative,
        })
    }
}

fn single_mu(s: &RefinedSeries, lf: &LambdaFixed) -> Result<Scalar> {
    match lf.mus.as_slice() {
        [] => Ok(Scalar::Exact(Rational::zero())),
        [m] => Ok(m.value.clone()),
        _ => Err(Error::PreconditionFailed(format!(
            "{} has {} fixed parts; a surface target takes one curve",
            s.name,
            lf.mus.len()
        ))),
    }
}

fn combined_boundary(
    s: &RefinedSeries,
    boundary: &BoundaryDivisor,
    lf: &LambdaFixed,
) -> Result<Vec<LabeledValue>> {
    let mut points: Vec<LabeledValue> = boundary
        .points
        .iter()
        .map(|p| LabeledValue {
            label: p.label.clone(),
            value: Scalar::Exact(p.coeff.clone()),
        })
        .collect();
    for part in &s.fixed_parts {
        if !part.degree.is_one() {
            return Err(Error::PreconditionFailed(format!(
                "fixed part {} on P¹ has degree {}, expected a point",
                part.label,
                format_rational(&part.degree)
            )));
        }
        let mu = lf.mu(&part.label).expect("one mu per fixed part").clone();
        match points.iter_mut().find(|p| p.label == part.label) {
            Some(p) => p.value = p.value.clone() + mu,
            None => points.push(LabeledValue {
                label: part.label.clone(),
                value: mu,
            }),
        }
    }
    Ok(points)
}

/// Decides g-weighted K-stability of the pair refined by `s`.
///
/// Requires `g` to be a weight (`Fut_g = 0`); on P¹ the level of the model
/// pair lifts, with K-stable of the model giving K-polystable.
pub fn weighted_verdict(s: &RefinedSeries, g: &WeightSpec) -> Result<Verdict> {
    check_weight(s, g)?;
    let lf = lambda_fixed(s, g)?;
    let zero = Scalar::Exact(Rational::zero());
    if lf.lambda.compare(&zero) != Ordering::Greater {
        return Err(Error::NotLogFano(format!("λ = {} ≤ 0", lf.lambda)));
    }
    match &s.target.kind {
        TargetKind::ProjLine { boundary } => {
            let points = combined_boundary(s, boundary, &lf)?;
            let model = li_scalar(points)?;
            let Certificate::Li(li) = model.certificate else {
                unreachable!("li_scalar returns an Li certificate")
            };
            let level = match model.level {
                Level::KStable => Level::KPolystable,
                other => other,
            };
            Ok(Verdict {
                level,
                certificate: Certificate::WeightedLine {
                    lambda: lf.lambda,
                    mus: lf.mus,
                    model_level: model.level,
                    li,
                },
            })
        }
        TargetKind::ProjPlane {
            curve: CurveKind::Conic,
        } => {
            let mu = single_mu(s, &lf)?;
            let threshold = rat(3, 4);
            let level = match mu.compare_tol(&Scalar::Exact(threshold.clone()), COMPARE_TOL) {
                Ordering::Less => Level::KPolystable,
                Ordering::Equal => Level::KSemistableNotPolystable,
                Ordering::Greater => Level::KUnstable,
            };
            Ok(Verdict {
                level,
                certificate: Certificate::Conic {
                    lambda: lf.lambda,
                    mu,
                    threshold,
                },
            })
        }
        TargetKind::ProjPlane { curve } | TargetKind::QuadricSurface { curve } => {
            let git_class = curve.git_class().ok_or_else(|| {
                Error::PreconditionFailed(format!(
                    "no GIT bridge for a {} on {}",
                    curve.name(),
                    s.target.name()
                ))
            })?;
            let mu = single_mu(s, &lf)?;
            let in_range = mu.compare(&zero) == Ordering::Greater
                && mu.compare(&Scalar::Exact(Rational::one())) == Ordering::Less;
            if !in_range {
                return Err(Error::MuOutOfRange(mu.to_f64()));
            }
            let level = match git_class {
                GitClass::Stable | GitClass::Polystable => Level::KPolystable,
                GitClass::StrictlySemistable => Level::KSemistableNotPolystable,
                GitClass::Unstable => Level::KUnstable,
            };
            Ok(Verdict {
                level,
                certificate: Certificate::CurveGit {
                    lambda: lf.lambda,
                    mu,
                    curve: curve.name(),
                    git_class,
                },
            })
        }
    }
}

fn orbifold_multiplicity(coeff: &Rational) -> Option<u64> {
    let rest = Rational::one() - coeff;
    if rest <= Rational::zero() || !rest.numer().is_one() {
        return None;
    }
    let m: u64 = rest.denom().try_into().ok()?;
    (m >= 2).then_some(m)
}

/// Three boundary points with orbifold coefficients `1 − 1/m_i` on P¹ force
/// g-weighted K-polystability for every weight; the level is re-derived with
/// [`weighted_verdict`] and a disagreement is reported as an error.
pub fn complexity_one_three_points(s: &RefinedSeries, g: &WeightSpec) -> Result<Verdict> {
    let TargetKind::ProjLine { boundary } = &s.target.kind else {
        return Err(Error::PreconditionFailed(format!(
            "{} does not live on P¹",
            s.name
        )));
    };
    if boundary.points.len() != 3 {
        return Err(Error::PreconditionFailed(format!(
            "boundary has {} support points, expected 3",
            boundary.points.len()
        )));
    }
    let mut multiplicities = [0u64; 3];
    for (slot, p) in multiplicities.iter_mut().zip(&boundary.points) {
        *slot = orbifold_multiplicity(&p.coeff).ok_or_else(|| {
            Error::PreconditionFailed(format!(
                "coefficient {} of {} is not of the form 1 − 1/m",
                format_rational(&p.coeff),
                p.label
            ))
        })?;
    }
    let lf = lambda_fixed(s, g)?;
    let zero = Scalar::Exact(Rational::zero());
    if lf.lambda.compare(&zero) != Ordering::Greater {
        return Err(Error::PreconditionFailed(format!("λ = {} ≤ 0", lf.lambda)));
    }
    let combined = combined_boundary(s, boundary, &lf)?;
    let total = combined.iter().fold(zero, |acc, p| acc + p.value.clone());
    if total.compare(&Scalar::Exact(int(2))) != Ordering::Less {
        return Err(Error::PreconditionFailed(format!(
            "multiplicities {multiplicities:?}: Δ + F has degree {total} ≥ 2, not log Fano"
        )));
    }
    let recomputed = weighted_verdict(s, g)?;
    if recomputed.level != Level::KPolystable {
        return Err(Error::InternalInconsistency(format!(
            "three orbifold points {multiplicities:?} but the weighted verdict is {}",
            recomputed.level
        )));
    }
    Ok(Verdict {
        level: Level::KPolystable,
        certificate: Certificate::ThreePoints {
            multiplicities,
            recomputed: Box::new(recomputed),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{builtin_series, conic_p2};

    fn boundary(coeffs: &[Rational]) -> BoundaryDivisor {
        BoundaryDivisor::new(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (format!("q{i}"), c.clone())),
        )
    }

    fn level(coeffs: &[Rational]) -> Level {
        li_p1(&boundary(coeffs)).unwrap().level
    }

    #[test]
    fn li_examples() {
        let half = rat(1, 2);
        let v = li_p1(&boundary(&[half.clone(), half.clone(), half.clone()])).unwrap();
        assert_eq!(v.level, Level::KStable);
        let Certificate::Li(li) = v.certificate else {
            panic!()
        };
        assert_eq!(li.delta, Scalar::Exact(int(2)));
        assert_eq!(li.slack, Some(Scalar::Exact(rat(1, 2))));

        assert_eq!(level(&[rat(1, 3)]), Level::KUnstable);
        assert_eq!(level(&[]), Level::KPolystable);
        assert_eq!(level(&[rat(1, 3), rat(1, 3)]), Level::KPolystable);
        assert_eq!(
            level(&[rat(1, 3), rat(1, 4), rat(1, 12)]),
            Level::KSemistableNotPolystable
        );
        assert_eq!(level(&[rat(1, 3), int(0)]), Level::KUnstable);
        assert!(matches!(
            li_p1(&boundary(&[rat(9, 10), rat(9, 10), rat(1, 5)])),
            Err(Error::NotLogFano(_))
        ));
    }

    #[test]
    fn conic_line_model() {
        let one = WeightSpec::constant(int(1));
        assert_eq!(
            weighted_verdict(&conic_p2(&rat(1, 2)), &one).unwrap().level,
            Level::KPolystable
        );
        let v = weighted_verdict(&conic_p2(&rat(3, 4)), &one).unwrap();
        assert_eq!(v.level, Level::KSemistableNotPolystable);
        assert_eq!(
            weighted_verdict(&conic_p2(&rat(4, 5)), &one).unwrap().level,
            Level::KUnstable
        );
    }

    #[test]
    fn not_a_weight() {
        let s = builtin_series("MM2.28").unwrap();
        let err = weighted_verdict(&s, &WeightSpec::constant(int(1))).unwrap_err();
        assert!(matches!(err, Error::NotAWeight { .. }));
    }

    #[test]
    fn cubic_bridge() {
        let s = builtin_series("MM2.28").unwrap();
        let g = crate::weights::weight_family(&s, &int(1)).unwrap();
        let v = weighted_verdict(&s, &g).unwrap();
        assert_eq!(v.level, Level::KPolystable);
        let Certificate::CurveGit { mu, .. } = v.certificate else {
            panic!()
        };
        assert!(mu.to_f64() > 0.0 && mu.to_f64() < 1.0);
    }

    #[test]
    fn orbifold_coefficients() {
        assert_eq!(orbifold_multiplicity(&rat(1, 2)), Some(2));
        assert_eq!(orbifold_multiplicity(&rat(6, 7)), Some(7));
        assert_eq!(orbifold_multiplicity(&rat(2, 5)), None);
        assert_eq!(orbifold_multiplicity(&int(0)), None);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(Level::KStable.exit_code(), 0);
        assert_eq!(Level::KPolystable.exit_code(), 0);
        assert_eq!(Level::KSemistableNotPolystable.exit_code(), 4);
        assert_eq!(Level::KUnstable.exit_code(), 5);
    }
}
