//! Weighted volume, DH measure, S-invariants, `λ` and the fixed-part
//! coefficients `μ_j`, Fujita–Li differences, and `δ` on the projective line.
//!
//! Everything is exact when the weight is constant.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ratpoly::quadrature::gauss_kronrod;
use crate::ratpoly::{to_f64, FloatPoly, Interval, PiecewisePoly, Rational, Scalar};
use crate::series::{RefinedSeries, TargetKind, ZariskiVolProfile};
use crate::weights::{integrate_against, weighted_moment, WeightSpec};

/// `V^g = ∫_P g(α) vol(α) dα`.
pub fn weighted_volume(s: &RefinedSeries, g: &WeightSpec) -> Result<Scalar> {
    weighted_moment(s, g, 0)
}

/// The probability measure `g·vol/V^g` on the moment interval.
#[derive(Clone, Debug)]
pub struct DhDensity {
    support: Interval,
    pieces: Vec<(f64, f64, FloatPoly)>,
    weight: WeightSpec,
    volume: f64,
    /// `V^g`.
    pub weighted_volume: Scalar,
    /// Total mass, integrated numerically from the density itself.
    pub total: f64,
    /// `∫ α dDH^g`, from the closed-form moments.
    pub barycenter: Scalar,
}

impl DhDensity {
    pub fn density(&self, alpha: f64) -> f64 {
        let (Some(first), Some(last)) = (self.pieces.first(), self.pieces.last()) else {
            return 0.0;
        };
        if alpha < first.0 || alpha > last.1 {
            return 0.0;
        }
        let idx = self
            .pieces
            .partition_point(|p| p.0 <= alpha)
            .saturating_sub(1);
        self.weight.eval(alpha) * self.pieces[idx].2.eval(alpha) / self.volume
    }

    pub fn support(&self) -> Interval {
        self.support.clone()
    }
}

pub fn dh(s: &RefinedSeries, g: &WeightSpec) -> Result<DhDensity> {
    let weighted_volume = weighted_moment(s, g, 0)?;
    if weighted_volume.is_zero() {
        return Err(Error::DegenerateVolume);
    }
    let barycenter = weighted_moment(s, g, 1)? / weighted_volume.clone();
    let vol = s.vol_alpha();
    let volume = weighted_volume.to_f64();
    let pieces: Vec<(f64, f64, FloatPoly)> = vol
        .segments()
        .map(|(a, b, p)| (to_f64(a), to_f64(b), p.to_float()))
        .collect();
    let mut total = 0.0;
    for (a, b, p) in &pieces {
        total += gauss_kronrod(|x| g.eval(x) * p.eval(x) / volume, *a, *b, 1e-16, 1e-14).value;
    }
    Ok(DhDensity {
        support: vol.domain(),
        pieces,
        weight: g.clone(),
        volume,
        weighted_volume,
        total,
        barycenter,
    })
}

/// `S(L; E) = (1/vol L) ∫_0^τ vol(L − tE) dt`.
pub fn s_from_zariski(z: &ZariskiVolProfile) -> Result<Rational> {
    let domain = Interval::new(Rational::zero(), z.threshold.clone())?;
    Ok(z.profile.integrate(&domain)? / &z.vol_of_l)
}

/// Fujita–Li difference `A − S`.
pub fn fl(log_discrepancy: &Rational, s_value: &Scalar) -> Scalar {
    Scalar::Exact(log_discrepancy.clone()) - s_value.clone()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LabeledValue {
    pub label: String,
    pub value: Scalar,
}

/// `λ = ∫ f dDH^g` and `μ_j = ∫ k_j dDH^g` (times the series scale).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LambdaFixed {
    pub lambda: Scalar,
    pub mus: Vec<LabeledValue>,
}

impl LambdaFixed {
    pub fn mu(&self, label: &str) -> Option<&Scalar> {
        self.mus.iter().find(|m| m.label == label).map(|m| &m.value)
    }
}

fn dh_average(
    s: &RefinedSeries,
    h: &PiecewisePoly,
    g: &WeightSpec,
    volume: &Scalar,
) -> Result<Scalar> {
    let weighted = h.mul(&s.vol_alpha())?;
    Ok(Scalar::Exact(s.scale.clone()) * integrate_against(&weighted, g)? / volume.clone())
}

pub fn lambda_fixed(s: &RefinedSeries, g: &WeightSpec) -> Result<LambdaFixed> {
    let volume = weighted_volume(s, g)?;
    if volume.is_zero() {
        return Err(Error::DegenerateVolume);
    }
    let lambda = dh_average(s, &s.mobile_alpha(), g, &volume)?;
    let mus = s
        .fixed_parts
        .iter()
        .map(|part| {
            Ok(LabeledValue {
                label: part.label.clone(),
                value: dh_average(s, &s.fixed_alpha(part), g, &volume)?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(LambdaFixed { lambda, mus })
}

/// `λ·deg L − (deg(−K) − deg Δ − Σ μ_j deg F_j)`; zero for every weight.
pub fn lambda_identity_residual(s: &RefinedSeries, g: &WeightSpec) -> Result<Scalar> {
    let lf = lambda_fixed(s, g)?;
    let target = &s.target;
    let mut rhs = Scalar::Exact(target.anticanonical_degree() - target.boundary_degree());
    for part in &s.fixed_parts {
        let mu = lf.mu(&part.label).expect("one mu per fixed part");
        rhs = rhs - mu.clone() * Scalar::Exact(part.degree.clone());
    }
    Ok(lf.lambda * Scalar::Exact(target.base_degree.clone()) - rhs)
}

pub const GENERIC: &str = "generic";

fn require_line(s: &RefinedSeries) -> Result<()> {
    match s.target.kind {
        TargetKind::ProjLine { .. } => Ok(()),
        _ => Err(Error::PreconditionFailed(format!(
            "{} lives on a {} target, not P¹",
            s.name,
            s.target.name()
        ))),
    }
}

fn point_s_value(s: &RefinedSeries, lf: &LambdaFixed, label: &str) -> Result<Scalar> {
    let generic = lf.lambda.clone() * Scalar::Exact(Rational::new(1.into(), 2.into()));
    if label == GENERIC {
        return Ok(generic);
    }
    if let Some(mu) = lf.mu(label) {
        return Ok(generic + mu.clone());
    }
    let on_boundary = s
        .target
        .boundary()
        .is_some_and(|b| b.coeff(label).is_some());
    if on_boundary {
        Ok(generic)
    } else {
        Err(Error::UnknownPoint(label.to_string()))
    }
}

/// `S^g(W; p) = ∫ (f/2 + k_p) dDH^g` at a point of P¹, for the stored series
/// itself; [`delta_p1`] multiplies these values by the series scale.
pub fn s_point_p1(s: &RefinedSeries, g: &WeightSpec, label: &str) -> Result<Scalar> {
    require_line(s)?;
    let lf = lambda_fixed(&s.clone().with_scale(Rational::one()), g)?;
    point_s_value(s, &lf, label)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PointRow {
    pub label: String,
    #[serde(with = "crate::ratpoly::rational::serde_rational")]
    pub a: Rational,
    pub s: Scalar,
    pub ratio: Scalar,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DeltaReport {
    pub delta: Scalar,
    pub argmin: String,
    pub per_point: Vec<PointRow>,
}

/// `δ = min_p A(p)/S^g(W; p)` over the boundary support, the fixed-part
/// support and a generic point; `S` is constant off the fixed parts and `A`
/// off the boundary, so these candidates realize the minimum.
pub fn delta_p1(s: &RefinedSeries, g: &WeightSpec) -> Result<DeltaReport> {
    require_line(s)?;
    let lf = lambda_fixed(s, g)?;
    let boundary = s.target.boundary().expect("P¹ target");
    let mut labels: Vec<&str> = boundary.points.iter().map(|p| p.label.as_str()).collect();
    for part in &s.fixed_parts {
        if !labels.contains(&part.label.as_str()) {
            labels.push(&part.label);
        }
    }
    labels.push(GENERIC);

    let mut rows = Vec::with_capacity(labels.len());
    for label in labels {
        let a = match boundary.coeff(label) {
            Some(c) => Rational::one() - c,
            None => Rational::one(),
        };
        let s_value = point_s_value(s, &lf, label)?;
        if s_value.is_zero() {
            return Err(Error::DegenerateVolume);
        }
        let ratio = Scalar::Exact(a.clone()) / s_value.clone();
        rows.push(PointRow {
            label: label.to_string(),
            a,
            s: s_value,
            ratio,
        });
    }
    let best = rows
        .iter()
        .reduce(|best, row| {
            if row.ratio.compare(&best.ratio) == std::cmp::Ordering::Less {
                row
            } else {
                best
            }
        })
        .expect("generic row always present");
    Ok(DeltaReport {
        delta: best.ratio.clone(),
        argmin: best.label.clone(),
        per_point: rows,
    })
}
