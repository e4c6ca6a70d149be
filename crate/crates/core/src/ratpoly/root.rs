use crate::error::{Error, Result};

/// Result of a bracketed root search.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootOutcome {
    pub x: f64,
    pub value: f64,
    pub iterations: usize,
}

/// Bisection-first root finder for strictly decreasing functions.
///
/// A false-position step is taken only after an iteration that at least
/// halved the bracket and only when it lands strictly inside; otherwise the
/// midpoint is used, so the bracket shrinks by half at least every second
/// iteration.
#[derive(Clone, Copy, Debug)]
pub struct RootFinder {
    /// Stop when the bracket is narrower than this.
    pub x_tol: f64,
    /// Stop when `|phi(x)|` is at most this.
    pub f_tol: f64,
    pub max_iter: usize,
}

impl Default for RootFinder {
    fn default() -> Self {
        RootFinder {
            x_tol: 1e-12,
            f_tol: 1e-12,
            max_iter: 200,
        }
    }
}

impl RootFinder {
    pub fn solve(
        &self,
        mut phi: impl FnMut(f64) -> f64,
        bracket: (f64, f64),
    ) -> Result<RootOutcome> {
        let (mut lo, mut hi) = bracket;
        let mut f_lo = phi(lo);
        let mut f_hi = phi(hi);
        if !(lo < hi && f_lo > 0.0 && f_hi < 0.0) {
            return Err(Error::BadBracket { f_lo, f_hi });
        }
        let mut secant_ok = true;
        for iteration in 1..=self.max_iter {
            let width = hi - lo;
            let mid = lo + 0.5 * width;
            let mut x = mid;
            if secant_ok {
                let s = lo + width * f_lo / (f_lo - f_hi);
                if s > lo + 1e-3 * width && s < hi - 1e-3 * width {
                    x = s;
                }
            }
            if x <= lo || x >= hi {
                // Bracket has collapsed to adjacent floats.
                return Ok(best(lo, f_lo, hi, f_hi, iteration));
            }
            let fx = phi(x);
            if fx.is_nan() {
                return Err(Error::NoConvergence {
                    iterations: iteration,
                    last_x: x,
                });
            }
            if fx.abs() <= self.f_tol {
                return Ok(RootOutcome {
                    x,
                    value: fx,
                    iterations: iteration,
                });
            }
            if fx > 0.0 {
                lo = x;
                f_lo = fx;
            } else {
                hi = x;
                f_hi = fx;
            }
            if hi - lo <= self.x_tol {
                return Ok(best(lo, f_lo, hi, f_hi, iteration));
            }
            secant_ok = hi - lo <= 0.5 * width;
        }
        Err(Error::NoConvergence {
            iterations: self.max_iter,
            last_x: 0.5 * (lo + hi),
        })
    }
}

fn best(lo: f64, f_lo: f64, hi: f64, f_hi: f64, iterations: usize) -> RootOutcome {
    let (x, value) = if f_lo.abs() <= f_hi.abs() {
        (lo, f_lo)
    } else {
        (hi, f_hi)
    };
    RootOutcome {
        x,
        value,
        iterations,
    }
}

/// Root of a strictly decreasing `phi` on `bracket`, to `|phi(x)| ≤ tol` or
/// bracket width `≤ tol`, with the default 200-iteration cap.
pub fn find_root_decreasing(
    phi: impl FnMut(f64) -> f64,
    bracket: (f64, f64),
    tol: f64,
) -> Result<RootOutcome> {
    RootFinder {
        x_tol: tol,
        f_tol: tol,
        ..RootFinder::default()
    }
    .solve(phi, bracket)
}
