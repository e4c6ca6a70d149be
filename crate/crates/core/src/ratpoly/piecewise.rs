use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::poly::Poly;
use super::rational::{format_rational, int, serde_rational, Rational};
use crate::error::{Error, Result};

/// Closed interval `[lo, hi]` with `lo ≤ hi`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Interval {
    #[serde(with = "serde_rational")]
    lo: Rational,
    #[serde(with = "serde_rational")]
    hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::Parse(format!(
                "interval [{}, {}] has lo > hi",
                format_rational(&lo),
                format_rational(&hi)
            )));
        }
        Ok(Interval { lo, hi })
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn shift(&self, by: &Rational) -> Interval {
        Interval {
            lo: &self.lo + by,
            hi: &self.hi + by,
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}]",
            format_rational(&self.lo),
            format_rational(&self.hi)
        )
    }
}

/// Piecewise polynomial on `[breakpoints[0], breakpoints[k]]`.
///
/// Piece `i` governs `[breakpoints[i], breakpoints[i+1]]`; at an interior
/// breakpoint evaluation uses the right-hand piece. Continuity is not
/// required.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PiecewisePoly {
    breakpoints: Vec<Rational>,
    pieces: Vec<Poly>,
}

impl PiecewisePoly {
    pub fn new(breakpoints: Vec<Rational>, pieces: Vec<Poly>) -> Result<Self> {
        if breakpoints.len() != pieces.len() + 1 || pieces.is_empty() {
            return Err(Error::Parse(format!(
                "{} breakpoints for {} pieces",
                breakpoints.len(),
                pieces.len()
            )));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parse(
                "breakpoints must be strictly increasing".into(),
            ));
        }
        Ok(PiecewisePoly {
            breakpoints,
            pieces,
        })
    }

    /// Builds from `(from, to, poly)` triples that must tile an interval.
    pub fn from_segments(segments: Vec<(Rational, Rational, Poly)>) -> Result<Self> {
        let mut breakpoints = Vec::with_capacity(segments.len() + 1);
        let mut pieces = Vec::with_capacity(segments.len());
        for (from, to, p) in segments {
            match breakpoints.last() {
                None => breakpoints.push(from),
                Some(last) if *last == from => {}
                Some(last) => {
                    return Err(Error::Parse(format!(
                        "segments leave a gap or overlap between {} and {}",
                        format_rational(last),
                        format_rational(&from)
                    )))
                }
            }
            breakpoints.push(to);
            pieces.push(p);
        }
        Self::new(breakpoints, pieces)
    }

    pub fn single(poly: Poly, domain: &Interval) -> Result<Self> {
        Self::new(vec![domain.lo.clone(), domain.hi.clone()], vec![poly])
    }

    pub fn constant(c: Rational, domain: &Interval) -> Result<Self> {
        Self::single(Poly::constant(c), domain)
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[Poly] {
        &self.pieces
    }

    /// `(from, to, piece)` for each piece.
    pub fn segments(&self) -> impl Iterator<Item = (&Rational, &Rational, &Poly)> {
        self.pieces
            .iter()
            .enumerate()
            .map(move |(i, p)| (&self.breakpoints[i], &self.breakpoints[i + 1], p))
    }

    pub fn domain(&self) -> Interval {
        Interval {
            lo: self.breakpoints[0].clone(),
            hi: self.breakpoints.last().unwrap().clone(),
        }
    }

    pub fn max_degree(&self) -> usize {
        self.pieces
            .iter()
            .filter_map(Poly::degree)
            .max()
            .unwrap_or(0)
    }

    fn piece_index(&self, x: &Rational) -> Option<usize> {
        if !self.domain().contains(x) {
            return None;
        }
        // Right-hand piece at interior breakpoints; last piece at the right end.
        let idx = self.breakpoints.partition_point(|b| b <= x);
        Some(idx.saturating_sub(1).min(self.pieces.len() - 1))
    }

    /// `None` outside the domain.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        self.piece_index(x).map(|i| self.pieces[i].eval(x))
    }

    pub fn eval_f64(&self, x: f64) -> Option<f64> {
        let lo = super::rational::to_f64(&self.breakpoints[0]);
        let hi = super::rational::to_f64(self.breakpoints.last().unwrap());
        if !(lo..=hi).contains(&x) {
            return None;
        }
        let idx = self
            .breakpoints
            .partition_point(|b| super::rational::to_f64(b) <= x);
        let i = idx.saturating_sub(1).min(self.pieces.len() - 1);
        Some(self.pieces[i].eval_f64(x))
    }

    /// Left and right limits agree at every interior breakpoint.
    pub fn is_continuous(&self) -> bool {
        (1..self.pieces.len()).all(|i| {
            let x = &self.breakpoints[i];
            self.pieces[i - 1].eval(x) == self.pieces[i].eval(x)
        })
    }

    /// Same function with additional breakpoints inserted (points outside the
    /// open domain are ignored).
    pub fn refine(&self, extra: &[Rational]) -> PiecewisePoly {
        let dom = self.domain();
        let mut points = self.breakpoints.clone();
        points.extend(
            extra
                .iter()
                .filter(|x| &dom.lo < *x && *x < &dom.hi)
                .cloned(),
        );
        points.sort();
        points.dedup();
        let pieces = points
            .windows(2)
            .map(|w| {
                let i = self.piece_index(&w[0]).unwrap();
                self.pieces[i].clone()
            })
            .collect();
        PiecewisePoly {
            breakpoints: points,
            pieces,
        }
    }

    /// Restriction to a sub-interval of the domain.
    pub fn restrict(&self, interval: &Interval) -> Result<PiecewisePoly> {
        self.check_inside(interval)?;
        if interval.lo == interval.hi {
            return Err(Error::Parse(
                "cannot restrict to a degenerate interval".into(),
            ));
        }
        let refined = self.refine(&[interval.lo.clone(), interval.hi.clone()]);
        let mut breakpoints = Vec::new();
        let mut pieces = Vec::new();
        for (from, to, p) in refined.segments() {
            if from >= &interval.lo && to <= &interval.hi {
                if breakpoints.is_empty() {
                    breakpoints.push(from.clone());
                }
                breakpoints.push(to.clone());
                pieces.push(p.clone());
            }
        }
        Ok(PiecewisePoly {
            breakpoints,
            pieces,
        })
    }

    fn check_inside(&self, interval: &Interval) -> Result<()> {
        let dom = self.domain();
        if dom.contains_interval(interval) {
            Ok(())
        } else {
            Err(Error::IntervalOutOfDomain {
                lo: format_rational(&interval.lo),
                hi: format_rational(&interval.hi),
                domain_lo: format_rational(&dom.lo),
                domain_hi: format_rational(&dom.hi),
            })
        }
    }

    /// Pieces restricted to `interval`, as `(from, to, piece)` with `from < to`.
    pub(crate) fn clipped_segments(
        &self,
        interval: &Interval,
    ) -> Result<Vec<(Rational, Rational, Poly)>> {
        self.check_inside(interval)?;
        Ok(self
            .segments()
            .filter_map(|(from, to, p)| {
                let a = from.max(&interval.lo).clone();
                let b = to.min(&interval.hi).clone();
                (a < b).then(|| (a, b, p.clone()))
            })
            .collect())
    }

    /// Exact `∫_I f(α) dα`.
    pub fn integrate(&self, interval: &Interval) -> Result<Rational> {
        Ok(self
            .clipped_segments(interval)?
            .iter()
            .map(|(a, b, p)| p.integrate(a, b))
            .fold(Rational::zero(), |acc, v| acc + v))
    }

    /// Exact `∫_I α^k f(α) dα`.
    pub fn moment(&self, k: usize, interval: &Interval) -> Result<Rational> {
        let weight = Poly::monomial(k);
        Ok(self
            .clipped_segments(interval)?
            .iter()
            .map(|(a, b, p)| (p * &weight).integrate(a, b))
            .fold(Rational::zero(), |acc, v| acc + v))
    }

    /// Integral over the whole domain.
    pub fn total(&self) -> Rational {
        self.integrate(&self.domain())
            .expect("domain is inside itself")
    }

    fn zip_with(
        &self,
        other: &PiecewisePoly,
        op: impl Fn(&Poly, &Poly) -> Poly,
    ) -> Result<PiecewisePoly> {
        let (da, db) = (self.domain(), other.domain());
        if da != db {
            return Err(Error::DomainMismatch(format!("{da} vs {db}")));
        }
        let a = self.refine(&other.breakpoints);
        let b = other.refine(&self.breakpoints);
        Ok(PiecewisePoly {
            pieces: a
                .pieces
                .iter()
                .zip(&b.pieces)
                .map(|(p, q)| op(p, q))
                .collect(),
            breakpoints: a.breakpoints,
        })
    }

    pub fn add(&self, other: &PiecewisePoly) -> Result<PiecewisePoly> {
        self.zip_with(other, |p, q| p + q)
    }

    pub fn sub(&self, other: &PiecewisePoly) -> Result<PiecewisePoly> {
        self.zip_with(other, |p, q| p - q)
    }

    pub fn mul(&self, other: &PiecewisePoly) -> Result<PiecewisePoly> {
        self.zip_with(other, |p, q| p * q)
    }

    pub fn scale(&self, c: &Rational) -> PiecewisePoly {
        self.map_pieces(|p| p.scale(c))
    }

    pub fn mul_poly(&self, q: &Poly) -> PiecewisePoly {
        self.map_pieces(|p| p * q)
    }

    pub fn pow(&self, n: u32) -> PiecewisePoly {
        self.map_pieces(|p| p.pow(n))
    }

    pub fn map_pieces(&self, f: impl Fn(&Poly) -> Poly) -> PiecewisePoly {
        PiecewisePoly {
            breakpoints: self.breakpoints.clone(),
            pieces: self.pieces.iter().map(f).collect(),
        }
    }

    /// `g(x) = f(x + by)`, defined on the domain shifted by `-by`.
    pub fn shift(&self, by: &Rational) -> PiecewisePoly {
        PiecewisePoly {
            breakpoints: self.breakpoints.iter().map(|b| b - by).collect(),
            pieces: self.pieces.iter().map(|p| p.shift(by)).collect(),
        }
    }

    /// Equality as functions: every piece agrees on the common refinement.
    pub fn same_function(&self, other: &PiecewisePoly) -> bool {
        self.sub(other)
            .map(|d| d.pieces.iter().all(Poly::is_zero))
            .unwrap_or(false)
    }

    /// Exact `f ≥ 0` on the whole domain.
    pub fn nonneg(&self) -> bool {
        self.segments().all(|(a, b, p)| p.nonneg_on(a, b))
    }

    /// Exact `f > 0` on the open domain (interior breakpoints included).
    pub fn positive_interior(&self) -> bool {
        let n = self.pieces.len();
        self.segments().all(|(a, b, p)| p.positive_on_open(a, b))
            && (1..n).all(|i| {
                let x = &self.breakpoints[i];
                self.pieces[i].eval(x) > Rational::zero()
                    && self.pieces[i - 1].eval(x) > Rational::zero()
            })
    }

    /// Exact `f` non-increasing on the whole domain (each piece, plus no
    /// upward jumps at breakpoints).
    pub fn non_increasing(&self) -> bool {
        self.segments()
            .all(|(a, b, p)| (-&p.derivative()).nonneg_on(a, b))
            && (1..self.pieces.len()).all(|i| {
                let x = &self.breakpoints[i];
                self.pieces[i].eval(x) <= self.pieces[i - 1].eval(x)
            })
    }

    /// Splits the piece containing each point so that no piece straddles it.
    pub fn split_at(&self, x: &Rational) -> PiecewisePoly {
        self.refine(std::slice::from_ref(x))
    }

    /// `|f|` evaluated exactly, assuming no piece changes sign inside after
    /// splitting at `x`; used for `|α|·v` style weights.
    pub fn abs_of_signed_pieces(&self) -> PiecewisePoly {
        self.map_pieces_with_bounds(|a, b, p| {
            let mid = (a + b) / int(2);
            if p.eval(&mid) < Rational::zero() {
                -p
            } else {
                p.clone()
            }
        })
    }

    fn map_pieces_with_bounds(
        &self,
        f: impl Fn(&Rational, &Rational, &Poly) -> Poly,
    ) -> PiecewisePoly {
        PiecewisePoly {
            breakpoints: self.breakpoints.clone(),
            pieces: self.segments().map(|(a, b, p)| f(a, b, p)).collect(),
        }
    }
}

impl fmt::Display for PiecewisePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (a, b, p)) in self.segments().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{p} on [{}, {}]", format_rational(a), format_rational(b))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::rational::rat;

    fn lin(c0: i64, c1: i64) -> Poly {
        Poly::linear(int(c0), int(c1))
    }

    fn iv(lo: i64, hi: i64) -> Interval {
        Interval::new(int(lo), int(hi)).unwrap()
    }

    fn mm228_vol() -> PiecewisePoly {
        PiecewisePoly::new(
            vec![int(-1), int(0), int(3)],
            vec![lin(3, 2).pow(2), lin(3, -1).pow(2)],
        )
        .unwrap()
    }

    #[test]
    fn integrate_examples() {
        let f = PiecewisePoly::single(lin(3, -1).pow(2), &iv(0, 3)).unwrap();
        assert_eq!(f.integrate(&iv(0, 3)).unwrap(), int(9));
        let g = PiecewisePoly::single(lin(3, 2).pow(2), &iv(-1, 0)).unwrap();
        assert_eq!(g.integrate(&iv(-1, 0)).unwrap(), rat(13, 3));
        let one = PiecewisePoly::constant(int(1), &iv(0, 1)).unwrap();
        assert_eq!(one.integrate(&iv(0, 1)).unwrap(), int(1));
    }

    #[test]
    fn moment_examples() {
        let v = mm228_vol();
        // -3/2 + 27/4
        assert_eq!(v.moment(1, &iv(-1, 3)).unwrap(), rat(21, 4));
        assert_eq!(
            v.moment(0, &iv(-1, 3)).unwrap(),
            v.integrate(&iv(-1, 3)).unwrap()
        );
        let even = PiecewisePoly::single(Poly::monomial(2), &iv(-1, 1)).unwrap();
        assert_eq!(even.moment(1, &iv(-1, 1)).unwrap(), int(0));
    }

    #[test]
    fn out_of_domain_is_rejected() {
        let v = mm228_vol();
        assert!(matches!(
            v.integrate(&iv(-2, 0)),
            Err(Error::IntervalOutOfDomain { .. })
        ));
        assert!(v.eval(&int(4)).is_none());
    }

    #[test]
    fn partial_interval() {
        let v = mm228_vol();
        let sub = Interval::new(rat(-1, 2), int(1)).unwrap();
        let exact = lin(3, 2).pow(2).integrate(&rat(-1, 2), &int(0))
            + lin(3, -1).pow(2).integrate(&int(0), &int(1));
        assert_eq!(v.integrate(&sub).unwrap(), exact);
    }

    #[test]
    fn right_piece_at_interior_breakpoint() {
        let step = PiecewisePoly::new(
            vec![int(0), int(1), int(2)],
            vec![Poly::constant(int(5)), Poly::constant(int(7))],
        )
        .unwrap();
        assert_eq!(step.eval(&int(1)), Some(int(7)));
        assert_eq!(step.eval(&int(2)), Some(int(7)));
        assert_eq!(step.eval(&int(0)), Some(int(5)));
        assert!(!step.is_continuous());
        assert!(mm228_vol().is_continuous());
    }

    #[test]
    fn arithmetic_merges_breakpoints() {
        let f =
            PiecewisePoly::new(vec![int(0), int(1), int(2)], vec![lin(0, 1), lin(2, -1)]).unwrap();
        let g = PiecewisePoly::new(vec![int(0), rat(3, 2), int(2)], vec![lin(1, 0), lin(0, 0)])
            .unwrap();
        let s = f.add(&g).unwrap();
        assert_eq!(s.breakpoints(), &[int(0), int(1), rat(3, 2), int(2)]);
        assert_eq!(f.scale(&int(1)), f);
        let x = PiecewisePoly::single(lin(0, 1), &iv(0, 1)).unwrap();
        assert_eq!(x.mul(&x).unwrap().pieces()[0], Poly::monomial(2));
        let other = PiecewisePoly::single(lin(0, 1), &iv(0, 2)).unwrap();
        assert!(matches!(x.add(&other), Err(Error::DomainMismatch(_))));
    }

    #[test]
    fn shift_and_restrict() {
        let v = mm228_vol();
        let shifted = v.shift(&int(-1)); // g(x) = v(x - 1) on [0, 4]
        assert_eq!(shifted.domain(), iv(0, 4));
        assert_eq!(shifted.eval(&int(1)), v.eval(&int(0)));
        let r = v.restrict(&iv(0, 1)).unwrap();
        assert_eq!(r.pieces().len(), 1);
        assert_eq!(r.total(), lin(3, -1).pow(2).integrate(&int(0), &int(1)));
    }

    #[test]
    fn sign_predicates() {
        let v = mm228_vol();
        assert!(v.nonneg());
        assert!(v.positive_interior());
        let bad = PiecewisePoly::single(lin(-1, 1), &iv(0, 2)).unwrap();
        assert!(!bad.nonneg());
        let profile = PiecewisePoly::new(
            vec![int(0), int(1), int(2)],
            vec![
                Poly::new(vec![int(1), int(0), rat(-1, 2)]),
                lin(2, -1).pow(2).scale(&rat(1, 2)),
            ],
        )
        .unwrap();
        assert!(profile.non_increasing());
        assert!(profile.is_continuous());
        assert!(!mm228_vol().non_increasing());
    }
}
