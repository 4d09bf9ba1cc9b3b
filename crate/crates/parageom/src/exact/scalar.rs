//! Arbitrary-precision rational scalars.
//!
//! `Scalar` is the ground field for everything in this crate. There is no
//! floating point anywhere in the pipeline: all linear algebra, Gröbner
//! computations and geometric verdicts are exact. The representation is a
//! reduced fraction with positive denominator, backed by `num::BigRational`.

use crate::error::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

/// Exact rational number in reduced form with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(n)))
    }

    /// `p/q` as an exact fraction. Panics when `q == 0`; use `try_ratio` for
    /// caller-provided data.
    pub fn ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Scalar(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn try_ratio(p: BigInt, q: BigInt) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar(BigRational::new(p, q)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    /// Sign as -1, 0, or 1.
    pub fn signum(&self) -> i32 {
        if self.0.is_zero() {
            0
        } else if self.0.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn abs(&self) -> Self {
        Scalar(self.0.abs())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar(self.0.recip()))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact rational cube root, when one exists.
    pub fn cbrt_exact(&self) -> Option<Self> {
        fn icbrt(n: &BigInt) -> Option<BigInt> {
            if n.is_zero() {
                return Some(BigInt::zero());
            }
            let neg = n.is_negative();
            let m = n.abs();
            // Newton iteration on integers, then verify.
            let mut x = BigInt::one() << ((m.bits() / 3 + 1) as usize);
            loop {
                let x2 = &x * &x;
                let nx = (&m / &x2 + 2 * &x) / 3;
                if nx >= x {
                    break;
                }
                x = nx;
            }
            if &x * &x * &x == m {
                Some(if neg { -x } else { x })
            } else {
                None
            }
        }
        let p = icbrt(self.numer())?;
        let q = icbrt(self.denom())?;
        Some(Scalar(BigRational::new(p, q)))
    }

    /// Rough size measure used by pivoting heuristics: total bit length of
    /// numerator and denominator.
    pub fn bit_size(&self) -> u64 {
        self.numer().bits() + self.denom().bits()
    }

    /// Parse `"p"` or `"p/q"` (optionally signed).
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let (p, q) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s, "1"),
        };
        let p: BigInt = p
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in scalar `{s}`")))?;
        let q: BigInt = q
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in scalar `{s}`")))?;
        Scalar::try_ratio(p, q)
    }
}

impl fmt::Display for Scalar {
    /// Canonical `p/q` form (denominator always printed, reduced, positive).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Scalar::parse(&s).map_err(D::Error::custom)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar(&self.0 $op &rhs.0)
            }
        }
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(self.0 $op rhs.0)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "scalar division by zero");
        Scalar(&self.0 / &rhs.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        self.0 *= &rhs.0;
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_form_and_positive_denominator() {
        let s = Scalar::ratio(4, -6);
        assert_eq!(s.to_string(), "-2/3");
        assert_eq!(Scalar::ratio(0, 5), Scalar::zero());
    }

    #[test]
    fn parse_round_trip() {
        for text in ["-3/10", "7/1", "0/1", "22/7"] {
            let s = Scalar::parse(text).unwrap();
            assert_eq!(s.to_string(), text);
        }
        assert_eq!(Scalar::parse("5").unwrap(), Scalar::from_int(5));
        assert!(Scalar::parse("1/0").is_err());
        assert!(Scalar::parse("x").is_err());
    }

    #[test]
    fn exact_cube_roots() {
        assert_eq!(
            Scalar::ratio(-4096, 1).cbrt_exact(),
            Some(Scalar::from_int(-16))
        );
        assert_eq!(Scalar::ratio(8, 27).cbrt_exact(), Some(Scalar::ratio(2, 3)));
        assert_eq!(Scalar::from_int(2).cbrt_exact(), None);
        assert_eq!(Scalar::zero().cbrt_exact(), Some(Scalar::zero()));
    }

    #[test]
    fn field_ops() {
        let a = Scalar::ratio(2, 3);
        let b = Scalar::ratio(-1, 6);
        assert_eq!(&a + &b, Scalar::ratio(1, 2));
        assert_eq!(&a * &b, Scalar::ratio(-1, 9));
        assert_eq!(&a / &b, Scalar::from_int(-4));
        assert_eq!(a.recip().unwrap(), Scalar::ratio(3, 2));
        assert!(Scalar::zero().recip().is_err());
    }
}
