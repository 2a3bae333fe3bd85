//! Arbitrary-precision exact fractions.
//!
//! `Rational` wraps [`num_rational::BigRational`], which already keeps values
//! reduced with a positive denominator. The wrapper adds the pieces the rest
//! of the crate needs: fallible division, exact square roots, and the
//! `"p/q"` string format used on the command line and in JSON.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact fraction `numerator / denominator`, always reduced, denominator > 0.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `numerator / denominator`, rejecting a zero denominator.
    pub fn new(numerator: impl Into<BigInt>, denominator: impl Into<BigInt>) -> Result<Self> {
        let den = denominator.into();
        if den.is_zero() {
            return Err(Error::DivisionByZero("rational with zero denominator".into()));
        }
        Ok(Rational(BigRational::new(numerator.into(), den)))
    }

    pub fn from_integer(value: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(value.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
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

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    /// True for 0, 1 and -1: the values every identity variable must avoid.
    pub fn is_trivial(&self) -> bool {
        self.is_zero() || self.0.abs().is_one()
    }

    /// The integer value, when the fraction is integral.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.to_integer())
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_integer().and_then(|n| n.to_i64())
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i8 {
        match self.0.numer().sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn square(&self) -> Self {
        Rational(&self.0 * &self.0)
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero("reciprocal of zero".into()));
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero(format!("{self} / 0")));
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    /// Exact square root: `Some(r)` with `r >= 0` and `r * r == self` when both
    /// reduced parts are perfect squares, `None` otherwise.
    pub fn sqrt(&self) -> Result<Option<Self>> {
        if self.is_negative() {
            return Err(Error::Domain(format!("square root of negative rational {self}")));
        }
        let (num, den) = (self.numer(), self.denom());
        let (rn, rd) = (num.sqrt(), den.sqrt());
        if &(&rn * &rn) == num && &(&rd * &rd) == den {
            Ok(Some(Rational(BigRational::new(rn, rd))))
        } else {
            Ok(None)
        }
    }

    /// `1 - 1/self^2`: one radicand factor.
    pub fn radicand_factor(&self) -> Result<Self> {
        Ok(Rational::one() - self.square().recip()?)
    }

    /// `1 + 1/self`: one right-hand factor.
    pub fn plus_factor(&self) -> Result<Self> {
        Ok(Rational::one() + self.recip()?)
    }
}

impl From<i64> for Rational {
    fn from(value: i64) -> Self {
        Rational::from_integer(value)
    }
}

impl From<BigInt> for Rational {
    fn from(value: BigInt) -> Self {
        Rational::from_integer(value)
    }
}

impl From<BigRational> for Rational {
    fn from(value: BigRational) -> Self {
        Rational(value)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

fn parse_int(s: &str, whole: &str) -> Result<BigInt> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!("malformed rational {whole:?}")));
    }
    s.parse::<BigInt>()
        .map_err(|_| Error::Parse(format!("malformed rational {whole:?}")))
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `"p"` or `"p/q"` with optional leading sign on either part.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.split_once('/') {
            None => Ok(Rational::from_integer(parse_int(s, s)?)),
            Some((n, d)) => {
                let (n, d) = (parse_int(n, s)?, parse_int(d, s)?);
                Rational::new(n, d).map_err(|_| Error::Parse(format!("zero denominator in {s:?}")))
            }
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, r| acc + r)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |acc, r| acc * r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(q("81/256").sqrt().unwrap(), Some(q("9/16")));
        assert_eq!(q("0").sqrt().unwrap(), Some(q("0")));
        assert_eq!(q("2").sqrt().unwrap(), None);
        assert_eq!(q("8/9").sqrt().unwrap(), None);
        assert!(matches!(q("-4").sqrt(), Err(Error::Domain(_))));
    }

    #[test]
    fn stored_reduced() {
        let r = Rational::new(6, -4).unwrap();
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(q("10/5").to_string(), "2");
    }

    #[test]
    fn division_by_zero_is_reported() {
        assert!(matches!(Rational::new(1, 0), Err(Error::DivisionByZero(_))));
        assert!(q("3").checked_div(&q("0")).is_err());
        assert!(q("0").recip().is_err());
        assert!(q("0").radicand_factor().is_err());
    }

    #[test]
    fn parse_rejects_garbage() {
        for bad in ["", "1/", "/2", "a", "1/0", "1.5", "1/2/3", "--1", "1 2"] {
            assert!(bad.parse::<Rational>().is_err(), "{bad:?} parsed");
        }
        assert_eq!(q("+3/-6"), q("-1/2"));
    }

    #[test]
    fn triviality() {
        assert!(q("0").is_trivial());
        assert!(q("1").is_trivial());
        assert!(q("-1").is_trivial());
        assert!(!q("1/2").is_trivial());
        assert!(!q("-2").is_trivial());
    }
}
