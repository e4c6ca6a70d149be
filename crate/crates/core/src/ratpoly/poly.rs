use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, int, to_f64, Rational};

/// Univariate polynomial with exact rational coefficients, ascending degree.
///
/// The coefficient list never has a trailing zero; the zero polynomial is the
/// empty list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `c0 + c1·x`.
    pub fn linear(c0: Rational, c1: Rational) -> Self {
        Self::new(vec![c0, c1])
    }

    /// The monomial `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = Rational::one();
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + to_f64(c))
    }

    /// Coefficients rounded once to `f64`, for repeated evaluation.
    pub fn to_float(&self) -> FloatPoly {
        FloatPoly(self.coeffs.iter().map(to_f64).collect())
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Poly {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rational::zero());
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c / int(i as i64 + 1));
        }
        Poly::new(coeffs)
    }

    /// Exact `∫_a^b p(x) dx`.
    pub fn integrate(&self, a: &Rational, b: &Rational) -> Rational {
        let anti = self.antiderivative();
        anti.eval(b) - anti.eval(a)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut out = Poly::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// `q(x) = p(a + b·x)`.
    pub fn compose_linear(&self, a: &Rational, b: &Rational) -> Poly {
        let inner = Poly::linear(a.clone(), b.clone());
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, c| {
            &(&acc * &inner) + &Poly::constant(c.clone())
        })
    }

    /// `q(x) = p(x + shift)`.
    pub fn shift(&self, shift: &Rational) -> Poly {
        self.compose_linear(shift, &Rational::one())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let d_deg = divisor.degree().expect("division by the zero polynomial");
        let d_lead = divisor.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let Some(deg) = self.degree() else {
            return (Poly::zero(), Poly::zero());
        };
        if deg < d_deg {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); deg - d_deg + 1];
        for i in (d_deg..=deg).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let factor = &rem[i] / d_lead;
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i - d_deg + j] -= &factor * dc;
            }
            quot[i - d_deg] = factor;
        }
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some(l) => self.scale(&(Rational::one() / l)),
            None => Poly::zero(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Yun's square-free factorisation: `p = c · Π_i f_i^i` with each `f_i`
    /// square-free and pairwise coprime. Entry `i - 1` holds `f_i`.
    pub fn squarefree_factors(&self) -> Vec<Poly> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let p = self.monic();
        let dp = p.derivative();
        let a = p.gcd(&dp);
        let mut b = p.div_rem(&a).0;
        let c = dp.div_rem(&a).0;
        let mut d = &c - &b.derivative();
        let mut factors = Vec::new();
        loop {
            let f = b.gcd(&d);
            b = b.div_rem(&f).0;
            let c = d.div_rem(&f).0;
            d = &c - &b.derivative();
            factors.push(f);
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
        }
        factors
    }

    /// Product of the square-free factors of odd multiplicity: exactly the
    /// roots at which `p` changes sign.
    fn sign_change_part(&self) -> Poly {
        self.squarefree_factors()
            .iter()
            .enumerate()
            .filter(|(i, _)| i % 2 == 0)
            .fold(Poly::one(), |acc, (_, f)| &acc * f)
    }

    /// Number of distinct real roots in the open interval `(a, b)`.
    pub fn count_roots_open(&self, a: &Rational, b: &Rational) -> usize {
        if self.degree().unwrap_or(0) == 0 || a >= b {
            return 0;
        }
        let mut q = self
            .squarefree_factors()
            .iter()
            .fold(Poly::one(), |acc, f| &acc * f);
        for end in [a, b] {
            if q.eval(end).is_zero() {
                q = q.div_rem(&Poly::linear(-end.clone(), Rational::one())).0;
            }
        }
        if q.degree().unwrap_or(0) == 0 {
            return 0;
        }
        let chain = sturm_chain(&q);
        sign_variations(&chain, a) - sign_variations(&chain, b)
    }

    /// Exact test of `p(x) ≥ 0` for all `x ∈ [a, b]`.
    pub fn nonneg_on(&self, a: &Rational, b: &Rational) -> bool {
        if self.is_zero() {
            return true;
        }
        if self.eval(a).is_negative() || self.eval(b).is_negative() {
            return false;
        }
        if a >= b {
            return true;
        }
        if self.sign_change_part().count_roots_open(a, b) > 0 {
            return false;
        }
        // No sign change inside: any non-root interior point decides.
        let mut probe = (a + b) / int(2);
        for _ in 0..64 {
            let v = self.eval(&probe);
            if !v.is_zero() {
                return v.is_positive();
            }
            probe = (a + &probe) / int(2);
        }
        true
    }

    /// Exact test of `p(x) > 0` for all `x` in the open interval `(a, b)`.
    pub fn positive_on_open(&self, a: &Rational, b: &Rational) -> bool {
        !self.is_zero() && self.nonneg_on(a, b) && self.count_roots_open(a, b) == 0
    }
}

fn sturm_chain(p: &Poly) -> Vec<Poly> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(-&r);
    }
    chain
}

fn sign_variations(chain: &[Poly], x: &Rational) -> usize {
    let signs: Vec<bool> = chain
        .iter()
        .map(|p| p.eval(x))
        .filter(|v| !v.is_zero())
        .map(|v| v.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = Rational::zero();
        Poly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag_s = format_rational(&mag);
            let mag_s = if mag_s.contains('/') && i > 0 {
                format!("({mag_s})")
            } else {
                mag_s
            };
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag_s}")?,
                (1, true) => write!(f, "a")?,
                (1, false) => write!(f, "{mag_s}·a")?,
                (_, true) => write!(f, "a^{i}")?,
                (_, false) => write!(f, "{mag_s}·a^{i}")?,
            }
        }
        Ok(())
    }
}

/// A polynomial with `f64` coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatPoly(pub Vec<f64>);

impl FloatPoly {
    pub fn eval(&self, x: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }
}
