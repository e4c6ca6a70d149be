use std::collections::HashSet;
use std::fmt;

use num_traits::{One, Zero};

use super::{RefinedSeries, TargetKind, ZariskiVolProfile};
use crate::ratpoly::{format_rational, int, Rational};

/// One violated invariant, named by its clause.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub clause: &'static str,
    pub detail: String,
}

impl Violation {
    fn new(clause: &'static str, detail: impl Into<String>) -> Self {
        Violation {
            clause,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.clause, self.detail)
    }
}

pub const VOL_NONNEG: &str = "vol ≥ 0";
pub const VOL_POSITIVE: &str = "vol > 0 on interior";
pub const F_NONNEG: &str = "f ≥ 0";
pub const K_NONNEG: &str = "k ≥ 0";
pub const VOL_IDENTITY: &str = "vol = vol(L)·f^{n−r}";
pub const DOMAIN: &str = "domain = moment";
pub const FIXED_LABELS: &str = "fixed labels distinct";
pub const FIXED_DEGREE: &str = "fixed degree > 0";
pub const BASE_DEGREE: &str = "vol(L) matches target";
pub const BOUNDARY_COEFF: &str = "0 ≤ coeff < 1";
pub const BOUNDARY_LABELS: &str = "boundary labels distinct";
pub const BOUNDARY_TOTAL: &str = "Σ coeff < 2";
pub const SCALE: &str = "scale > 0";

/// Checks every invariant of a refined series exactly; an empty list means
/// the series is valid.
///
/// Sign conditions are decided per piece by exact real-root counting (Sturm
/// sequences on the odd-multiplicity part), so no clause is ever sampled.
pub fn validate(s: &RefinedSeries) -> Vec<Violation> {
    let mut out = Vec::new();
    let moment = &s.moment;

    for (what, pw) in [("vol", &s.vol), ("f", &s.mobile_f)] {
        if &pw.domain() != moment {
            out.push(Violation::new(
                DOMAIN,
                format!("{what} is defined on {}, moment is {moment}", pw.domain()),
            ));
        }
    }
    for part in &s.fixed_parts {
        if &part.k.domain() != moment {
            out.push(Violation::new(
                DOMAIN,
                format!(
                    "k_{} is defined on {}, moment is {moment}",
                    part.label,
                    part.k.domain()
                ),
            ));
        }
    }

    if !s.vol.nonneg() {
        out.push(Violation::new(VOL_NONNEG, "vol takes a negative value"));
    } else if moment.lo() < moment.hi() && !s.vol.positive_interior() {
        out.push(Violation::new(
            VOL_POSITIVE,
            "vol vanishes inside the moment interval",
        ));
    }
    if !s.mobile_f.nonneg() {
        out.push(Violation::new(
            F_NONNEG,
            "mobile part f takes a negative value",
        ));
    }
    let mut labels = HashSet::new();
    for part in &s.fixed_parts {
        if !part.k.nonneg() {
            out.push(Violation::new(
                K_NONNEG,
                format!("k_{} takes a negative value", part.label),
            ));
        }
        if part.degree <= Rational::zero() {
            out.push(Violation::new(
                FIXED_DEGREE,
                format!("deg {} ≤ 0", part.label),
            ));
        }
        if !labels.insert(part.label.as_str()) {
            out.push(Violation::new(
                FIXED_LABELS,
                format!("label {} repeated", part.label),
            ));
        }
    }

    let expected = s.mobile_f.pow(s.target.dim()).scale(&s.target.base_degree);
    if !expected.same_function(&s.vol) {
        out.push(Violation::new(
            VOL_IDENTITY,
            format!(
                "vol differs from {}·f^{}",
                format_rational(&s.target.base_degree),
                s.target.dim()
            ),
        ));
    }
    if s.target.base_degree != s.target.generator_volume() {
        out.push(Violation::new(
            BASE_DEGREE,
            format!(
                "vol(L) = {} but the {} generator has volume {}",
                format_rational(&s.target.base_degree),
                s.target.name(),
                format_rational(&s.target.generator_volume())
            ),
        ));
    }
    if s.scale <= Rational::zero() {
        out.push(Violation::new(SCALE, format_rational(&s.scale)));
    }

    if let TargetKind::ProjLine { boundary } = &s.target.kind {
        let mut seen = HashSet::new();
        for p in &boundary.points {
            if p.coeff < Rational::zero() || p.coeff >= Rational::one() {
                out.push(Violation::new(
                    BOUNDARY_COEFF,
                    format!("{} has coefficient {}", p.label, format_rational(&p.coeff)),
                ));
            }
            if !seen.insert(p.label.as_str()) {
                out.push(Violation::new(
                    BOUNDARY_LABELS,
                    format!("label {} repeated", p.label),
                ));
            }
        }
        if boundary.total() >= int(2) {
            out.push(Violation::new(
                BOUNDARY_TOTAL,
                format_rational(&boundary.total()),
            ));
        }
    }
    out
}

pub const PROFILE_START: &str = "profile(0) = vol(L)";
pub const PROFILE_NONNEG: &str = "profile ≥ 0";
pub const PROFILE_MONOTONE: &str = "profile non-increasing";
pub const PROFILE_DOMAIN: &str = "profile domain = [0, τ]";

pub fn validate_profile(z: &ZariskiVolProfile) -> Vec<Violation> {
    let mut out = Vec::new();
    let dom = z.profile.domain();
    if !dom.lo().is_zero() || dom.hi() != &z.threshold {
        out.push(Violation::new(
            PROFILE_DOMAIN,
            format!(
                "profile is defined on {dom}, τ = {}",
                format_rational(&z.threshold)
            ),
        ));
    }
    match z.profile.eval(&Rational::zero()) {
        Some(v) if v == z.vol_of_l => {}
        other => out.push(Violation::new(
            PROFILE_START,
            format!(
                "profile(0) = {}, vol(L) = {}",
                other
                    .map(|v| format_rational(&v))
                    .unwrap_or_else(|| "undefined".into()),
                format_rational(&z.vol_of_l)
            ),
        )),
    }
    if !z.profile.nonneg() {
        out.push(Violation::new(
            PROFILE_NONNEG,
            "profile takes a negative value",
        ));
    }
    if !z.profile.non_increasing() {
        out.push(Violation::new(
            PROFILE_MONOTONE,
            "profile increases somewhere",
        ));
    }
    out
}
