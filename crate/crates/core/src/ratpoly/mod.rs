//! Exact rational and piecewise-polynomial arithmetic, exponential-weight
//! integration, adaptive quadrature, and a monotone root finder.

pub mod expint;
pub mod piecewise;
pub mod poly;
pub mod quadrature;
pub mod rational;
pub mod root;
pub mod scalar;

pub use expint::{exp_moment, exp_moment_with_bound, DEFAULT_OVERFLOW_BOUND};
pub use piecewise::{Interval, PiecewisePoly};
pub use poly::{FloatPoly, Poly};
pub use rational::{format_rational, int, parse_rational, rat, to_f64, Rational};
pub use root::{find_root_decreasing, RootFinder, RootOutcome};
pub use scalar::Scalar;

use crate::error::Result;

/// Exact `∫_I f(α) dα`.
pub fn pw_integrate(f: &PiecewisePoly, interval: &Interval) -> Result<Rational> {
    f.integrate(interval)
}

/// Exact `∫_I α^k f(α) dα`.
pub fn pw_moment(f: &PiecewisePoly, k: usize, interval: &Interval) -> Result<Rational> {
    f.moment(k, interval)
}

pub fn pw_add(f: &PiecewisePoly, g: &PiecewisePoly) -> Result<PiecewisePoly> {
    f.add(g)
}

pub fn pw_mul(f: &PiecewisePoly, g: &PiecewisePoly) -> Result<PiecewisePoly> {
    f.mul(g)
}

pub fn pw_scale(f: &PiecewisePoly, c: &Rational) -> PiecewisePoly {
    f.scale(c)
}
