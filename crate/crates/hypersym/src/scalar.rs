//! Exact rational scalars.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// An arbitrary-precision rational, always in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn int(n: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(n)))
    }

    /// `p/q`. Panics if `q == 0`.
    pub fn frac(p: i64, q: i64) -> Self {
        Scalar(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn from_big(r: BigRational) -> Self {
        Scalar(r)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn signum(&self) -> i32 {
        if self.is_zero() {
            0
        } else if self.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn abs(&self) -> Self {
        Scalar(self.0.abs())
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn pow(&self, e: i32) -> Self {
        Scalar(num_traits::Pow::pow(&self.0, e))
    }

    pub fn recip(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar(self.0.recip()))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Exact rational cube root when one exists.
    pub fn cube_root(&self) -> Option<Self> {
        let n = icbrt(self.numer())?;
        let d = icbrt(self.denom())?;
        Some(Scalar(BigRational::new(n, d)))
    }
}

fn icbrt(n: &BigInt) -> Option<BigInt> {
    let neg = n.is_negative();
    let m = n.abs();
    let r = m.cbrt();
    if &r * &r * &r == m {
        Some(if neg { -r } else { r })
    } else {
        None
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("invalid scalar {s:?}"));
        let t = s.trim();
        let (p, q) = match t.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (t, "1"),
        };
        let p: BigInt = p.parse().map_err(|_| bad())?;
        let q: BigInt = q.parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        Ok(Scalar(BigRational::new(p, q)))
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(|_| serde::de::Error::custom(format!("invalid scalar {s:?}")))
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<i32> for Scalar {
    fn from(n: i32) -> Self {
        Scalar::int(n as i64)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $atr:ident, $am:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                Scalar(self.0.$m(o.0))
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &'a Scalar) -> Scalar {
                Scalar(self.0.$m(&o.0))
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                Scalar((&self.0).$m(o.0))
            }
        }
        impl<'a, 'b> $tr<&'b Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, o: &'b Scalar) -> Scalar {
                Scalar((&self.0).$m(&o.0))
            }
        }
        impl $atr<Scalar> for Scalar {
            fn $am(&mut self, o: Scalar) {
                self.0.$am(o.0)
            }
        }
        impl<'a> $atr<&'a Scalar> for Scalar {
            fn $am(&mut self, o: &'a Scalar) {
                self.0.$am(&o.0)
            }
        }
    };
}

binop!(Add, add, AddAssign, add_assign);
binop!(Sub, sub, SubAssign, sub_assign);
binop!(Mul, mul, MulAssign, mul_assign);

impl Div<Scalar> for Scalar {
    type Output = Scalar;
    fn div(self, o: Scalar) -> Scalar {
        assert!(!o.is_zero(), "division by zero scalar");
        Scalar(self.0 / o.0)
    }
}

impl<'b> Div<&'b Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, o: &'b Scalar) -> Scalar {
        assert!(!o.is_zero(), "division by zero scalar");
        Scalar(&self.0 / &o.0)
    }
}

impl<'a> Div<&'a Scalar> for Scalar {
    type Output = Scalar;
    fn div(self, o: &'a Scalar) -> Scalar {
        assert!(!o.is_zero(), "division by zero scalar");
        Scalar(self.0 / &o.0)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(it: I) -> Scalar {
        it.fold(Scalar::zero(), |a, b| a + b)
    }
}

impl<'a> Sum<&'a Scalar> for Scalar {
    fn sum<I: Iterator<Item = &'a Scalar>>(it: I) -> Scalar {
        it.fold(Scalar::zero(), |a, b| a + b)
    }
}

/// Shorthand for `Scalar::frac`.
pub fn q(p: i64, d: i64) -> Scalar {
    Scalar::frac(p, d)
}

/// Shorthand for `Scalar::int`.
pub fn int(n: i64) -> Scalar {
    Scalar::int(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms() {
        let x = q(6, -4);
        assert_eq!(x.to_string(), "-3/2");
        assert!(x.denom().is_positive());
    }

    #[test]
    fn parse_roundtrip() {
        for t in ["0", "-7", "3/5", "-12/13", "123456789012345678901234567891/2"] {
            let x: Scalar = t.parse().unwrap();
            assert_eq!(x.to_string(), t);
        }
        assert_eq!("4/6".parse::<Scalar>().unwrap().to_string(), "2/3");
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("x".parse::<Scalar>().is_err());
    }

    #[test]
    fn exact_sum_residual() {
        let (a, b, c, d) = (q(1, 3), q(2, 7), q(-5, 11), q(9, 4));
        let lhs = &a + &b;
        assert!((lhs - q(13, 21)).is_zero());
        let e = &c * &d - &d * &c;
        assert!(e.is_zero());
    }

    #[test]
    fn cube_roots() {
        assert_eq!(int(8).cube_root(), Some(int(2)));
        assert_eq!(q(-27, 64).cube_root(), Some(q(-3, 4)));
        assert_eq!(int(2).cube_root(), None);
    }

    #[test]
    fn json_string_form() {
        let v = serde_json::to_string(&q(-3, 5)).unwrap();
        assert_eq!(v, "\"-3/5\"");
        let back: Scalar = serde_json::from_str(&v).unwrap();
        assert_eq!(back, q(-3, 5));
    }
}
