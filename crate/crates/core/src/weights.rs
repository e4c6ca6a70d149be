//! Weight functions on the moment interval, the modified Futaki invariant,
//! and the soliton-candidate solver.
//!
//! All integrals are taken in the normalized moment coordinate `α` (see
//! [`RefinedSeries::vol_alpha`]).

use std::fmt;

use num_traits::{Signed, Zero};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::ratpoly::quadrature::adaptive_simpson;
use crate::ratpoly::{
    exp_moment, format_rational, parse_rational, to_f64, Interval, PiecewisePoly, Poly, Rational,
    RootFinder, Scalar,
};
use crate::series::RefinedSeries;

/// A positive weight `g` on the moment interval.
#[derive(Clone, Debug, PartialEq)]
pub enum WeightSpec {
    Constant {
        c: Rational,
    },
    /// `g(α) = e^{−ηα}`.
    Exponential {
        eta: f64,
    },
    /// `g(α) = p(α)·e^{−ηα}`.
    PolyExp {
        p: Poly,
        eta: f64,
    },
    /// Piecewise-linear interpolation of `(α, g(α))` samples.
    Tabulated {
        samples: Vec<(f64, f64)>,
    },
    /// Formal sum; moments are linear over the summands.
    Sum(Vec<WeightSpec>),
}

impl WeightSpec {
    pub fn constant(c: Rational) -> Self {
        WeightSpec::Constant { c }
    }

    pub fn exponential(eta: f64) -> Self {
        WeightSpec::Exponential { eta }
    }

    pub fn eval(&self, alpha: f64) -> f64 {
        match self {
            WeightSpec::Constant { c } => to_f64(c),
            WeightSpec::Exponential { eta } => (-eta * alpha).exp(),
            WeightSpec::PolyExp { p, eta } => p.eval_f64(alpha) * (-eta * alpha).exp(),
            WeightSpec::Tabulated { samples } => interpolate(samples, alpha),
            WeightSpec::Sum(parts) => parts.iter().map(|w| w.eval(alpha)).sum(),
        }
    }

    /// Exponent of the (single) exponential factor, if any.
    pub fn eta(&self) -> Option<f64> {
        match self {
            WeightSpec::Exponential { eta } | WeightSpec::PolyExp { eta, .. } => Some(*eta),
            WeightSpec::Sum(parts) => parts.iter().find_map(WeightSpec::eta),
            _ => None,
        }
    }

    /// `c·g`.
    pub fn scaled(&self, c: &Rational) -> WeightSpec {
        match self {
            WeightSpec::Constant { c: c0 } => WeightSpec::Constant { c: c0 * c },
            WeightSpec::Exponential { eta } => WeightSpec::PolyExp {
                p: Poly::constant(c.clone()),
                eta: *eta,
            },
            WeightSpec::PolyExp { p, eta } => WeightSpec::PolyExp {
                p: p.scale(c),
                eta: *eta,
            },
            WeightSpec::Tabulated { samples } => {
                let cf = to_f64(c);
                WeightSpec::Tabulated {
                    samples: samples.iter().map(|&(a, v)| (a, v * cf)).collect(),
                }
            }
            WeightSpec::Sum(parts) => WeightSpec::Sum(parts.iter().map(|w| w.scaled(c)).collect()),
        }
    }

    /// Checks `g > 0` on `moment` (normalized coordinate).
    pub fn check_positive(&self, moment: &Interval) -> Result<()> {
        let bad = |msg: String| {
            Err(Error::PreconditionFailed(format!(
                "weight is not positive: {msg}"
            )))
        };
        match self {
            WeightSpec::Constant { c } => {
                if c.is_positive() {
                    Ok(())
                } else {
                    bad(format!("constant {}", format_rational(c)))
                }
            }
            WeightSpec::Exponential { eta } => {
                if eta.is_finite() {
                    Ok(())
                } else {
                    bad(format!("eta = {eta}"))
                }
            }
            WeightSpec::PolyExp { p, eta } => {
                let (a, b) = (moment.lo(), moment.hi());
                let positive = p.eval(a).is_positive()
                    && p.eval(b).is_positive()
                    && (a == b || p.positive_on_open(a, b));
                if positive && eta.is_finite() {
                    Ok(())
                } else {
                    bad(format!("p = {p} vanishes or is negative on {moment}"))
                }
            }
            WeightSpec::Tabulated { samples } => {
                if samples.len() < 8 {
                    return bad(format!("{} samples, need at least 8", samples.len()));
                }
                if samples.windows(2).any(|w| w[0].0 >= w[1].0) {
                    return bad("sample abscissae are not strictly increasing".into());
                }
                if samples.iter().any(|s| !s.1.is_finite() || s.1 <= 0.0) {
                    return bad("a sample value is not positive".into());
                }
                let (lo, hi) = (samples[0].0, samples[samples.len() - 1].0);
                if lo > to_f64(moment.lo()) || hi < to_f64(moment.hi()) {
                    return bad(format!("samples span [{lo}, {hi}], moment is {moment}"));
                }
                Ok(())
            }
            WeightSpec::Sum(parts) => {
                if parts.is_empty() {
                    return bad("empty sum".into());
                }
                parts.iter().try_for_each(|w| w.check_positive(moment))
            }
        }
    }

    /// Parses a `[weight]` document fragment.
    pub fn from_toml(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Outer {
            weight: WeightDoc,
        }
        let outer: Outer = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        outer.weight.into_spec()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WeightDoc {
    kind: String,
    c: Option<String>,
    eta: Option<f64>,
    p: Option<Vec<String>>,
    samples: Option<Vec<[f64; 2]>>,
}

impl WeightDoc {
    fn into_spec(self) -> Result<WeightSpec> {
        let missing =
            |field: &str| Error::Parse(format!("weight kind `{}` needs `{field}`", self.kind));
        match self.kind.as_str() {
            "constant" => Ok(WeightSpec::Constant {
                c: parse_rational(self.c.as_deref().ok_or_else(|| missing("c"))?)?,
            }),
            "exp" => Ok(WeightSpec::Exponential {
                eta: self.eta.ok_or_else(|| missing("eta"))?,
            }),
            "polyexp" => {
                let coeffs = self.p.as_ref().ok_or_else(|| missing("p"))?;
                Ok(WeightSpec::PolyExp {
                    p: Poly::new(
                        coeffs
                            .iter()
                            .map(|c| parse_rational(c))
                            .collect::<Result<_>>()?,
                    ),
                    eta: self.eta.ok_or_else(|| missing("eta"))?,
                })
            }
            "tabulated" => Ok(WeightSpec::Tabulated {
                samples: self
                    .samples
                    .as_ref()
                    .ok_or_else(|| missing("samples"))?
                    .iter()
                    .map(|s| (s[0], s[1]))
                    .collect(),
            }),
            other => Err(Error::Parse(format!("unknown weight kind `{other}`"))),
        }
    }
}

impl fmt::Display for WeightSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightSpec::Constant { c } => write!(f, "constant:{}", format_rational(c)),
            WeightSpec::Exponential { eta } => write!(f, "exp:{eta}"),
            WeightSpec::PolyExp { p, eta } => write!(f, "({p})·exp(-{eta}·a)"),
            WeightSpec::Tabulated { samples } => write!(f, "tabulated[{} samples]", samples.len()),
            WeightSpec::Sum(parts) => {
                let terms: Vec<String> = parts.iter().map(|w| w.to_string()).collect();
                write!(f, "{}", terms.join(" + "))
            }
        }
    }
}

fn interpolate(samples: &[(f64, f64)], x: f64) -> f64 {
    let idx = samples.partition_point(|s| s.0 <= x);
    if idx == 0 {
        return samples[0].1;
    }
    if idx == samples.len() {
        return samples[idx - 1].1;
    }
    let (x0, y0) = samples[idx - 1];
    let (x1, y1) = samples[idx];
    y0 + (y1 - y0) * (x - x0) / (x1 - x0)
}

/// `∫ h(α) g(α) dα` over the domain of `h`; exact for constant weights.
pub fn integrate_against(h: &PiecewisePoly, g: &WeightSpec) -> Result<Scalar> {
    let domain = h.domain();
    match g {
        WeightSpec::Constant { c } => Ok(Scalar::Exact(c * h.total())),
        WeightSpec::Exponential { eta } => exp_moment(h, *eta, &domain).map(Scalar::Approx),
        WeightSpec::PolyExp { p, eta } => {
            exp_moment(&h.mul_poly(p), *eta, &domain).map(Scalar::Approx)
        }
        WeightSpec::Tabulated { samples } => Ok(Scalar::Approx(tabulated_integral(h, samples))),
        WeightSpec::Sum(parts) => parts
            .iter()
            .try_fold(Scalar::Exact(Rational::zero()), |acc, w| {
                Ok(acc + integrate_against(h, w)?)
            }),
    }
}

/// Per-piece adaptive Simpson over the union of the series breakpoints and
/// the sample abscissae.
fn tabulated_integral(h: &PiecewisePoly, samples: &[(f64, f64)]) -> f64 {
    let mut total = 0.0;
    for (a, b, p) in h.segments() {
        let (a, b) = (to_f64(a), to_f64(b));
        let p = p.to_float();
        let mut cuts = vec![a];
        cuts.extend(samples.iter().map(|s| s.0).filter(|&x| a < x && x < b));
        cuts.push(b);
        for w in cuts.windows(2) {
            let integrand = |x: f64| p.eval(x) * interpolate(samples, x);
            let size = (w[1] - w[0])
                * (integrand(w[0]).abs()
                    + integrand(0.5 * (w[0] + w[1])).abs()
                    + integrand(w[1]).abs());
            total += adaptive_simpson(integrand, w[0], w[1], 1e-12 * size.max(f64::MIN_POSITIVE));
        }
    }
    total
}

/// `∫_P α^k g(α) vol(α) dα`.
pub fn weighted_moment(s: &RefinedSeries, g: &WeightSpec, k: usize) -> Result<Scalar> {
    integrate_against(&s.vol_alpha().mul_poly(&Poly::monomial(k)), g)
}

/// `∫_P |α| g(α) vol(α) dα`, the scale against which the weight condition is
/// measured.
pub fn absolute_first_moment(s: &RefinedSeries, g: &WeightSpec) -> Result<Scalar> {
    let h = s
        .vol_alpha()
        .split_at(&Rational::zero())
        .mul_poly(&Poly::monomial(1))
        .abs_of_signed_pieces();
    integrate_against(&h, g)
}

/// `Fut_g = −∫ α g vol / ∫ g vol`.
pub fn futaki_g(s: &RefinedSeries, g: &WeightSpec) -> Result<Scalar> {
    let v = weighted_moment(s, g, 0)?;
    if v.is_zero() {
        return Err(Error::DegenerateVolume);
    }
    Ok(-(weighted_moment(s, g, 1)? / v))
}

/// First moment and its scale-relative size.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightCondition {
    pub first_moment: Scalar,
    pub scale: Scalar,
    pub relative: f64,
}

pub fn weight_condition(s: &RefinedSeries, g: &WeightSpec) -> Result<WeightCondition> {
    let first_moment = weighted_moment(s, g, 1)?;
    let scale = absolute_first_moment(s, g)?;
    let relative = if scale.is_zero() {
        0.0
    } else {
        (first_moment.to_f64() / scale.to_f64()).abs()
    };
    Ok(WeightCondition {
        first_moment,
        scale,
        relative,
    })
}

/// `|∫ α g vol| ≤ tol · ∫ |α| g vol`. Exact when `g` is constant.
pub fn is_weight(s: &RefinedSeries, g: &WeightSpec, tol: f64) -> bool {
    match weight_condition(s, g) {
        Ok(WeightCondition {
            first_moment: Scalar::Exact(m),
            ..
        }) if tol == 0.0 => m.is_zero(),
        Ok(w) => w.first_moment.is_zero() || w.relative <= tol,
        Err(_) => false,
    }
}

/// Outcome of the soliton-candidate solve.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolitonSolve {
    pub eta0: f64,
    /// `φ(η₀) = ∫ α e^{−η₀α} vol dα`.
    pub residual: f64,
    pub iterations: usize,
    /// `∫ |α| e^{−η₀α} vol dα`.
    pub scale: f64,
}

/// `φ(η) = ∫ α e^{−ηα} vol(α) dα`, strictly decreasing in `η`.
pub fn soliton_phi(s: &RefinedSeries) -> impl Fn(f64) -> Result<f64> {
    let h = s.vol_alpha().mul_poly(&Poly::monomial(1));
    let domain = h.domain();
    move |eta| exp_moment(&h, eta, &domain)
}

/// Finds the root of `offset + φ(η)` given the exact value at `η = 0`.
fn solve_shifted_phi(
    s: &RefinedSeries,
    offset: f64,
    at_zero: &Rational,
) -> Result<(f64, f64, usize)> {
    if at_zero.is_zero() {
        return Ok((0.0, 0.0, 0));
    }
    let phi = soliton_phi(s);
    let psi = |eta: f64| -> Result<f64> { Ok(offset + phi(eta)?) };
    // The root lies on the side where φ moves toward zero.
    let direction = if at_zero.is_positive() { 1.0 } else { -1.0 };
    let mut near = 0.0;
    let mut far = direction;
    loop {
        let value = match psi(far) {
            Ok(v) => v,
            Err(Error::Overflow { .. }) => {
                return Err(Error::NoRoot(format!(
                    "the α-moment of {} keeps one sign for every admissible η",
                    s.name
                )))
            }
            Err(e) => return Err(e),
        };
        if value == 0.0 {
            return Ok((far, 0.0, 0));
        }
        if (value > 0.0) != (direction > 0.0) {
            break;
        }
        near = far;
        far *= 2.0;
    }
    let (lo, hi) = if direction > 0.0 {
        (near, far)
    } else {
        (far, near)
    };
    let finder = RootFinder {
        x_tol: 4.0 * f64::EPSILON * hi.abs().max(lo.abs()).max(1.0),
        f_tol: 0.0,
        max_iter: 200,
    };
    let mut failure = None;
    let outcome = finder.solve(
        |eta| match psi(eta) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        },
        (lo, hi),
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let outcome = outcome?;
    Ok((outcome.x, outcome.value, outcome.iterations))
}

/// Solves `∫ α e^{−ηα} vol dα = 0` for the unique `η₀`.
pub fn solve_soliton(s: &RefinedSeries, tol: f64) -> Result<SolitonSolve> {
    let at_zero = s.vol_alpha().moment(1, &s.moment_alpha())?;
    let (eta0, residual, iterations) = solve_shifted_phi(s, 0.0, &at_zero)?;
    let scale = absolute_first_moment(s, &WeightSpec::exponential(eta0))?.to_f64();
    if residual.abs() > tol * scale {
        return Err(Error::NoConvergence {
            iterations,
            last_x: eta0,
        });
    }
    Ok(SolitonSolve {
        eta0,
        residual,
        iterations,
        scale,
    })
}

/// The weight `c + e^{−η(c)α}` with `η(c)` chosen so that the modified
/// Futaki invariant vanishes. `c = 0` gives the soliton weight.
pub fn weight_family(s: &RefinedSeries, c: &Rational) -> Result<WeightSpec> {
    if c.is_negative() {
        return Err(Error::PreconditionFailed(format!(
            "family parameter {} is negative",
            format_rational(c)
        )));
    }
    if c.is_zero() {
        return Ok(WeightSpec::exponential(solve_soliton(s, 1e-12)?.eta0));
    }
    let m1 = s.vol_alpha().moment(1, &s.moment_alpha())?;
    if m1.is_zero() {
        return Ok(WeightSpec::constant(c + Rational::from_integer(1.into())));
    }
    // c·M1 + φ(η) has the sign of M1 at η = 0.
    let (eta, _, _) = solve_shifted_phi(s, to_f64(&(c * &m1)), &m1)?;
    Ok(WeightSpec::Sum(vec![
        WeightSpec::constant(c.clone()),
        WeightSpec::exponential(eta),
    ]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::{int, rat};
    use crate::series::builtin_series;

    fn mm228() -> RefinedSeries {
        builtin_series("MM2.28").unwrap()
    }

    #[test]
    fn constant_moments_are_exact() {
        let s = mm228();
        let one = WeightSpec::constant(int(1));
        assert_eq!(
            weighted_moment(&s, &one, 0).unwrap(),
            Scalar::Exact(rat(40, 3))
        );
        assert_eq!(
            weighted_moment(&s, &one, 1).unwrap(),
            Scalar::Exact(rat(21, 4))
        );
        let two = WeightSpec::constant(int(2));
        assert_eq!(
            weighted_moment(&s, &two, 1).unwrap(),
            Scalar::Exact(rat(21, 2))
        );
        assert_eq!(futaki_g(&s, &one).unwrap(), Scalar::Exact(rat(-63, 160)));
        assert_eq!(futaki_g(&s, &two).unwrap(), Scalar::Exact(rat(-63, 160)));
    }

    #[test]
    fn weight_checks() {
        let s = mm228();
        assert!(!is_weight(&s, &WeightSpec::constant(int(1)), 1e-9));
        let conic = builtin_series("conic-P2").unwrap();
        assert!(is_weight(&conic, &WeightSpec::constant(int(1)), 0.0));
    }

    #[test]
    fn soliton_on_mm228() {
        let s = mm228();
        let sol = solve_soliton(&s, 1e-12).unwrap();
        assert!(sol.eta0 > 0.0);
        // independent mpmath quadrature + bisection
        assert!(
            (sol.eta0 - 0.937_781_559_542_535_8).abs() < 1e-10,
            "{}",
            sol.eta0
        );
        assert!(sol.residual.abs() <= 1e-12 * sol.scale);
    }

    #[test]
    fn symmetric_series_has_zero_eta() {
        let conic = builtin_series("conic-P2").unwrap();
        let sol = solve_soliton(&conic, 1e-12).unwrap();
        assert_eq!(sol.eta0, 0.0);
        let g = weight_family(&conic, &int(1)).unwrap();
        assert_eq!(g, WeightSpec::constant(int(2)));
    }

    #[test]
    fn family_members_are_weights() {
        let s = mm228();
        for c in [rat(1, 2), int(1), int(4)] {
            let g = weight_family(&s, &c).unwrap();
            assert!(is_weight(&s, &g, 1e-10), "{g}");
        }
        assert!(matches!(
            weight_family(&s, &int(-1)),
            Err(Error::PreconditionFailed(_))
        ));
    }

    #[test]
    fn tabulated_matches_closed_form() {
        let s = mm228();
        let eta = 0.4;
        let samples: Vec<(f64, f64)> = (0..=400)
            .map(|i| {
                let a = -1.0 + 4.0 * i as f64 / 400.0;
                (a, (-eta * a).exp())
            })
            .collect();
        let tab = WeightSpec::Tabulated { samples };
        tab.check_positive(&s.moment_alpha()).unwrap();
        let exact = weighted_moment(&s, &WeightSpec::exponential(eta), 0)
            .unwrap()
            .to_f64();
        let approx = weighted_moment(&s, &tab, 0).unwrap().to_f64();
        // linear interpolation error of e^{-0.4a} on a 0.01 grid
        assert!(((approx - exact) / exact).abs() < 1e-5);
    }

    #[test]
    fn positivity_checks() {
        let moment = Interval::new(int(-1), int(3)).unwrap();
        assert!(WeightSpec::constant(int(0))
            .check_positive(&moment)
            .is_err());
        let p = Poly::linear(int(1), int(1)); // vanishes at -1
        assert!(WeightSpec::PolyExp { p, eta: 0.0 }
            .check_positive(&moment)
            .is_err());
        let short = WeightSpec::Tabulated {
            samples: vec![(-1.0, 1.0), (3.0, 1.0)],
        };
        assert!(short.check_positive(&moment).is_err());
    }

    #[test]
    fn parses_weight_fragments() {
        let w = WeightSpec::from_toml("[weight]\nkind = \"constant\"\nc = \"3/2\"").unwrap();
        assert_eq!(w, WeightSpec::constant(rat(3, 2)));
        let w =
            WeightSpec::from_toml("[weight]\nkind = \"polyexp\"\np = [\"1\", \"1/2\"]\neta = 0.25")
                .unwrap();
        assert_eq!(w.eta(), Some(0.25));
        assert!(WeightSpec::from_toml("[weight]\nkind = \"exp\"").is_err());
    }
}
