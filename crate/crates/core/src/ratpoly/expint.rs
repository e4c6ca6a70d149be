//! Closed-form integrals of piecewise polynomials against `e^{-ηα}`.
//!
//! Each piece is re-expanded about the endpoint where the exponential is
//! largest, `q(u) = p(anchor ± u)`, so the integral becomes
//! `e^{-η·anchor} Σ_k q_k ∫_0^h u^k e^{-|η|u} du`. The inner integrals are the
//! lower incomplete gamma values obtained by repeated integration by parts;
//! they are evaluated through a positive-term series (small `|η|h`) or the
//! finite by-parts sum (large `|η|h`), both free of cancellation.

use super::piecewise::{Interval, PiecewisePoly};
use super::poly::Poly;
use super::rational::{int, to_f64, Rational};
use crate::error::{Error, Result};

/// Default bound on `|η|·max|α|`.
pub const DEFAULT_OVERFLOW_BOUND: f64 = 700.0;

/// `∫_I f(α) e^{-ηα} dα` with the default overflow bound.
pub fn exp_moment(f: &PiecewisePoly, eta: f64, interval: &Interval) -> Result<f64> {
    exp_moment_with_bound(f, eta, interval, DEFAULT_OVERFLOW_BOUND)
}

pub fn exp_moment_with_bound(
    f: &PiecewisePoly,
    eta: f64,
    interval: &Interval,
    bound: f64,
) -> Result<f64> {
    let segments = f.clipped_segments(interval)?;
    let reach = to_f64(interval.lo()).abs().max(to_f64(interval.hi()).abs());
    let product = eta.abs() * reach;
    if !eta.is_finite() || product > bound {
        return Err(Error::Overflow { product, bound });
    }
    if eta == 0.0 {
        return Ok(to_f64(&f.integrate(interval)?));
    }
    Ok(segments
        .iter()
        .map(|(a, b, p)| piece_integral(p, a, b, eta))
        .sum())
}

fn piece_integral(p: &Poly, a: &Rational, b: &Rational, eta: f64) -> f64 {
    let (anchor, direction) = if eta > 0.0 { (a, int(1)) } else { (b, int(-1)) };
    let q = p.compose_linear(anchor, &direction);
    let rate = eta.abs();
    let h = to_f64(&(b - a));
    let inner: f64 = q
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| to_f64(c) * lower_gamma_integral(k, rate, h))
        .sum();
    (-eta * to_f64(anchor)).exp() * inner
}

/// `∫_0^h u^k e^{-r u} du` for `r ≥ 0`, `h ≥ 0`.
pub(crate) fn lower_gamma_integral(k: usize, r: f64, h: f64) -> f64 {
    let x = r * h;
    let kf = k as f64;
    if x <= kf + 50.0 {
        // h^{k+1} e^{-x} Σ_m x^m / ((k+1)(k+2)...(k+1+m))
        let mut term = 1.0 / (kf + 1.0);
        let mut sum = term;
        let mut m = 0.0;
        loop {
            m += 1.0;
            term *= x / (kf + m + 1.0);
            sum += term;
            if term <= 1e-17 * sum && m > x {
                break;
            }
        }
        h.powi(k as i32 + 1) * (-x).exp() * sum
    } else {
        // k!/r^{k+1} (1 - e^{-x} Σ_{m≤k} x^m/m!)
        let mut tail = 0.0;
        let mut term = 1.0;
        for m in 0..=k {
            if m > 0 {
                term *= x / m as f64;
            }
            tail += term;
        }
        let factorial: f64 = (1..=k).map(|i| i as f64).product();
        factorial / r.powi(k as i32 + 1) * (1.0 - (-x).exp() * tail)
    }
}
