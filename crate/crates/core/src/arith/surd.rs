//! Elements `p + q*sqrt(d)` of a real quadratic field.
//!
//! Values are normalized eagerly: `d` is squarefree, and `q == 0` forces
//! `d == 0`, so a rational embeds with `d == 0` and equality is structural.
//! Binary operations accept operands from the same field or a rational
//! operand paired with anything; mixing two different radicands is an error.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Surd {
    p: Rational,
    q: Rational,
    d: BigInt,
}

/// Splits `n >= 0` as `root^2 * core` with `core` squarefree.
///
/// Trial division runs up to the cube root of `n`. What is left afterwards
/// has at most two prime factors, so it is either a perfect square (one
/// repeated prime) or squarefree.
pub fn squarefree_split(n: &BigInt) -> (BigInt, BigInt) {
    if n.is_zero() {
        return (BigInt::zero(), BigInt::zero());
    }
    let mut rest = n.abs();
    let mut root = BigInt::one();
    let mut core = BigInt::one();
    let limit = rest.cbrt();
    let mut p = BigInt::from(2u32);
    while p <= limit && !rest.is_one() {
        let mut exp = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            exp += 1;
        }
        for _ in 0..exp / 2 {
            root *= &p;
        }
        if exp % 2 == 1 {
            core *= &p;
        }
        p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    let s = rest.sqrt();
    if !rest.is_one() && &s * &s == rest {
        root *= s;
    } else {
        core *= rest;
    }
    (root, core)
}

impl Surd {
    /// Builds `p + q*sqrt(d)` and normalizes it. `d` must be nonnegative.
    pub fn new(p: Rational, q: Rational, d: impl Into<BigInt>) -> Result<Self> {
        let d = d.into();
        if d.is_negative() {
            return Err(Error::Domain(format!("negative radicand sqrt({d})")));
        }
        Ok(Self::normalized(p, q, d))
    }

    fn normalized(p: Rational, q: Rational, d: BigInt) -> Self {
        if q.is_zero() || d.is_zero() {
            return Surd::from(p);
        }
        let (root, core) = squarefree_split(&d);
        let q = q * Rational::from_integer(root);
        if core.is_one() {
            Surd::from(p + q)
        } else {
            Surd { p, q, d: core }
        }
    }

    /// Re-applies normalization. Values built through the public API are
    /// already normal, so this is the identity on them.
    pub fn normalize(&self) -> Self {
        Self::normalized(self.p.clone(), self.q.clone(), self.d.clone())
    }

    /// The nonnegative square root of a nonnegative rational, as a surd.
    pub fn sqrt_of(r: &Rational) -> Result<Self> {
        if r.is_negative() {
            return Err(Error::Domain(format!("square root of negative rational {r}")));
        }
        // sqrt(n/m) = sqrt(n*m) / m
        let m = r.denom().clone();
        let q = Rational::new(1, m.clone())?;
        Ok(Self::normalized(Rational::zero(), q, r.numer() * m))
    }

    pub fn p(&self) -> &Rational {
        &self.p
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    /// The squarefree radicand, 0 for a rational value.
    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.d.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.p)
    }

    pub fn is_zero(&self) -> bool {
        self.is_rational() && self.p.is_zero()
    }

    pub fn is_trivial(&self) -> bool {
        self.is_rational() && self.p.is_trivial()
    }

    pub fn conjugate(&self) -> Self {
        Surd {
            p: self.p.clone(),
            q: -&self.q,
            d: self.d.clone(),
        }
    }

    /// `p^2 - q^2 d`, the product with the conjugate.
    pub fn norm(&self) -> Rational {
        self.p.square() - self.q.square() * Rational::from_integer(self.d.clone())
    }

    /// Exact sign of `p + q*sqrt(d)`, decided by comparing `p^2` with `q^2 d`.
    pub fn signum(&self) -> i8 {
        let (sp, sq) = (self.p.signum(), self.q.signum());
        if sq == 0 || sp == sq {
            return sp;
        }
        if sp == 0 {
            return sq;
        }
        // opposite signs: whichever part has the larger square wins
        let pp = self.p.square();
        let qqd = self.q.square() * Rational::from_integer(self.d.clone());
        match pp.cmp(&qqd) {
            Ordering::Greater => sp,
            Ordering::Less => sq,
            Ordering::Equal => 0,
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    fn common_d(&self, other: &Surd) -> Result<BigInt> {
        if other.d.is_zero() || self.d == other.d {
            Ok(self.d.clone())
        } else if self.d.is_zero() {
            Ok(other.d.clone())
        } else {
            Err(Error::IncompatibleField {
                left: self.d.to_string(),
                right: other.d.to_string(),
            })
        }
    }

    pub fn checked_add(&self, other: &Surd) -> Result<Self> {
        let d = self.common_d(other)?;
        Ok(Self::normalized(&self.p + &other.p, &self.q + &other.q, d))
    }

    pub fn checked_sub(&self, other: &Surd) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Surd) -> Result<Self> {
        let d = self.common_d(other)?;
        let dr = Rational::from_integer(d.clone());
        let p = &self.p * &other.p + &self.q * &other.q * dr;
        let q = &self.p * &other.q + &self.q * &other.p;
        Ok(Self::normalized(p, q, d))
    }

    pub fn recip(&self) -> Result<Self> {
        // d is squarefree and not 1, so the norm vanishes only at zero
        let norm = self.norm();
        if norm.is_zero() {
            return Err(Error::DivisionByZero("reciprocal of zero surd".into()));
        }
        let c = self.conjugate();
        Ok(Self::normalized(c.p.checked_div(&norm)?, c.q.checked_div(&norm)?, c.d))
    }

    pub fn checked_div(&self, other: &Surd) -> Result<Self> {
        self.common_d(other)?;
        self.checked_mul(&other.recip()?)
    }

    pub fn square(&self) -> Self {
        self.checked_mul(self).expect("a surd shares its own field")
    }

    /// Exact comparison of represented values.
    pub fn cmp_value(&self, other: &Surd) -> Result<Ordering> {
        Ok(match self.checked_sub(other)?.signum() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        })
    }

    /// `1 - 1/self^2`.
    pub fn radicand_factor(&self) -> Result<Self> {
        Surd::from(Rational::one()).checked_sub(&self.square().recip()?)
    }

    /// `1 + sign/self` for `sign` in {+1, -1}.
    pub fn signed_factor(&self, sign: i8) -> Result<Self> {
        let inv = self.recip()?;
        let inv = if sign < 0 { -inv } else { inv };
        Surd::from(Rational::one()).checked_add(&inv)
    }

    /// Floating approximation, for display and test cross-checks only.
    pub fn to_f64(&self) -> f64 {
        let d = self.d.to_f64().unwrap_or(f64::NAN);
        self.p.to_f64() + self.q.to_f64() * d.sqrt()
    }
}

impl From<Rational> for Surd {
    fn from(p: Rational) -> Self {
        Surd {
            p,
            q: Rational::zero(),
            d: BigInt::zero(),
        }
    }
}

impl From<i64> for Surd {
    fn from(v: i64) -> Self {
        Surd::from(Rational::from(v))
    }
}

impl std::ops::Neg for &Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd {
            p: -&self.p,
            q: -&self.q,
            d: self.d.clone(),
        }
    }
}

impl std::ops::Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        -&self
    }
}

impl fmt::Display for Surd {
    /// `"p"` for a rational, `"p + q*sqrt(d)"` otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{} + {}*sqrt({})", self.p, self.q, self.d)
        }
    }
}

impl FromStr for Surd {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let Some((p, rest)) = s.split_once(" + ") else {
            return Ok(Surd::from(s.parse::<Rational>()?));
        };
        let bad = || Error::Parse(format!("malformed surd {s:?}"));
        let (q, d) = rest.split_once("*sqrt(").ok_or_else(bad)?;
        let d = d.strip_suffix(')').ok_or_else(bad)?;
        if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let d: BigInt = d.parse().map_err(|_| bad())?;
        Surd::new(p.parse()?, q.parse()?, d)
    }
}

impl Serialize for Surd {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Surd {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn surd(p: &str, qq: &str, d: i64) -> Surd {
        Surd::new(q(p), q(qq), d).unwrap()
    }

    #[test]
    fn mul_examples() {
        let one_plus = surd("1", "1", 2);
        assert_eq!(one_plus.checked_mul(&one_plus.conjugate()).unwrap(), Surd::from(-1));
        let r2 = surd("0", "1", 2);
        assert_eq!(r2.checked_mul(&r2).unwrap(), Surd::from(2));
        let prod = surd("1", "2", 3).checked_mul(&surd("2", "1", 3)).unwrap();
        assert_eq!(prod, surd("8", "5", 3));
    }

    #[test]
    fn normalize_examples() {
        let s = surd("0", "1", 8);
        assert_eq!((s.p(), s.q(), s.d()), (&q("0"), &q("2"), &BigInt::from(2)));
        let s = surd("3", "0", 7);
        assert_eq!((s.p(), s.q(), s.d()), (&q("3"), &q("0"), &BigInt::from(0)));
        let s = surd("1", "1/2", 12);
        assert_eq!((s.p(), s.q(), s.d()), (&q("1"), &q("1"), &BigInt::from(3)));
        assert_eq!(surd("1", "3", 9), Surd::from(10));
        assert_eq!(s.normalize(), s);
    }

    #[test]
    fn squarefree_split_cases() {
        let cases = [(0, (0, 0)), (1, (1, 1)), (12, (2, 3)), (49, (7, 1)), (98, (7, 2)), (30, (1, 30))];
        for (n, (r, c)) in cases {
            assert_eq!(squarefree_split(&BigInt::from(n)), (BigInt::from(r), BigInt::from(c)), "{n}");
        }
        // two large primes above the cube root: 1000003 * 1000033
        let n = BigInt::from(1_000_003u64) * BigInt::from(1_000_033u64);
        assert_eq!(squarefree_split(&n), (BigInt::one(), n.clone()));
        let sq = BigInt::from(1_000_003u64) * BigInt::from(1_000_003u64) * 5;
        assert_eq!(squarefree_split(&sq), (BigInt::from(1_000_003u64), BigInt::from(5)));
    }

    #[test]
    fn incompatible_fields() {
        let a = surd("0", "1", 2);
        let b = surd("0", "1", 3);
        assert!(matches!(a.checked_mul(&b), Err(Error::IncompatibleField { .. })));
        assert!(a.checked_add(&b).is_err());
        assert!(a.checked_mul(&Surd::from(5)).is_ok());
    }

    #[test]
    fn exact_signs() {
        assert_eq!(surd("1", "-1", 2).signum(), -1); // 1 - 1.414
        assert_eq!(surd("-1", "1", 2).signum(), 1);
        assert_eq!(surd("3", "-2", 2).signum(), 1); // 3 - 2.83
        assert_eq!(surd("-3", "2", 2).signum(), -1);
        assert_eq!(surd("0", "-1", 5).signum(), -1);
        assert_eq!(surd("2", "1", 5).signum(), 1);
        assert_eq!(surd("-2", "-1", 5).signum(), -1);
        assert_eq!(Surd::from(0).signum(), 0);
    }

    #[test]
    fn division() {
        let x = surd("1", "2", 3);
        let y = surd("2", "1", 3);
        assert_eq!(x.checked_mul(&y).unwrap().checked_div(&y).unwrap(), x);
        assert!(x.checked_div(&Surd::from(0)).is_err());
    }

    #[test]
    fn sqrt_of_rational() {
        assert_eq!(Surd::sqrt_of(&q("9/4")).unwrap(), Surd::from(q("3/2")));
        assert_eq!(Surd::sqrt_of(&q("5/2")).unwrap(), surd("0", "1/2", 10));
        assert!(Surd::sqrt_of(&q("-1")).is_err());
    }

    #[test]
    fn string_format() {
        for s in ["3", "-1/2", "1 + 2*sqrt(3)", "-1/2 + -3/7*sqrt(10)", "0 + 1*sqrt(2)"] {
            assert_eq!(s.parse::<Surd>().unwrap().to_string(), s);
        }
        assert_eq!("1 + 1*sqrt(8)".parse::<Surd>().unwrap().to_string(), "1 + 2*sqrt(2)");
        for bad in ["1 + 2*sqrt(-3)", "1 + 2*sqrt(3", "1 + sqrt(3)", "x"] {
            assert!(bad.parse::<Surd>().is_err(), "{bad}");
        }
    }
}
