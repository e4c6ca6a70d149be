use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{Signed, Zero};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{format_rational, parse_rational, to_f64, Rational};

/// A number that stays exact as long as every input was exact.
///
/// Combining an `Exact` with an `Approx` value yields `Approx`.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(Rational),
    Approx(f64),
}

impl Scalar {
    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(q) => to_f64(q),
            Scalar::Approx(x) => *x,
        }
    }

    pub fn exact(&self) -> Option<&Rational> {
        match self {
            Scalar::Exact(q) => Some(q),
            Scalar::Approx(_) => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(q) => q.is_zero(),
            Scalar::Approx(x) => *x == 0.0,
        }
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Exact(q) => Scalar::Exact(q.abs()),
            Scalar::Approx(x) => Scalar::Approx(x.abs()),
        }
    }

    /// Exact comparison when both sides are exact, float comparison otherwise.
    pub fn compare(&self, other: &Scalar) -> Ordering {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a.cmp(b),
            _ => self
                .to_f64()
                .partial_cmp(&other.to_f64())
                .unwrap_or(Ordering::Equal),
        }
    }

    /// Like [`Scalar::compare`], but approximate values within `tol` of each
    /// other compare equal.
    pub fn compare_tol(&self, other: &Scalar, tol: f64) -> Ordering {
        if self.is_exact() && other.is_exact() {
            return self.compare(other);
        }
        let (a, b) = (self.to_f64(), other.to_f64());
        if (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs())) {
            Ordering::Equal
        } else {
            self.compare(other)
        }
    }

    pub fn min(self, other: Scalar) -> Scalar {
        if other.compare(&self) == Ordering::Less {
            other
        } else {
            self
        }
    }
}

impl From<Rational> for Scalar {
    fn from(q: Rational) -> Self {
        Scalar::Exact(q)
    }
}

impl From<f64> for Scalar {
    fn from(x: f64) -> Self {
        Scalar::Approx(x)
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a $op b),
                    _ => Scalar::Approx(self.to_f64() $op rhs.to_f64()),
                }
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                &self $op &rhs
            }
        }
    };
}

scalar_binop!(Add, add, +);
scalar_binop!(Sub, sub, -);
scalar_binop!(Mul, mul, *);
scalar_binop!(Div, div, /);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(q) => Scalar::Exact(-q),
            Scalar::Approx(x) => Scalar::Approx(-x),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(q) if q.denom() == &num_bigint::BigInt::from(1) => {
                write!(f, "{}", format_rational(q))
            }
            Scalar::Exact(q) => write!(f, "{} (≈{:.12})", format_rational(q), to_f64(q)),
            Scalar::Approx(x) => write!(f, "{x:.12}"),
        }
    }
}

/// JSON form: `{"exact": "p/q", "value": 0.5}` or `{"value": 0.5}`.
impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        if let Scalar::Exact(q) = self {
            map.serialize_entry("exact", &format_rational(q))?;
        }
        map.serialize_entry("value", &self.to_f64())?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            exact: Option<String>,
            value: f64,
        }
        let raw = Raw::deserialize(d)?;
        match raw.exact {
            Some(text) => parse_rational(&text)
                .map(Scalar::Exact)
                .map_err(serde::de::Error::custom),
            None => Ok(Scalar::Approx(raw.value)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::rational::rat;

    #[test]
    fn exactness_propagates() {
        let a = Scalar::Exact(rat(1, 3));
        let b = Scalar::Exact(rat(1, 6));
        assert_eq!(&a + &b, Scalar::Exact(rat(1, 2)));
        let c = &a * &Scalar::Approx(3.0);
        assert!(!c.is_exact());
        assert!((c.to_f64() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn ordering() {
        let a = Scalar::Exact(rat(1, 3));
        let b = Scalar::Approx(1.0 / 3.0 + 1e-15);
        assert_eq!(a.compare_tol(&b, 1e-12), Ordering::Equal);
        assert_eq!(a.compare(&Scalar::Exact(rat(1, 2))), Ordering::Less);
        assert_eq!(
            a.clone().min(Scalar::Exact(rat(1, 4))),
            Scalar::Exact(rat(1, 4))
        );
    }
}
