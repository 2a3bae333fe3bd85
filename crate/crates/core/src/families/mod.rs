//! Closed-form parametric families of identities.
//!
//! Every generator checks its parameter exclusions, assembles the identity,
//! and verifies it exactly before returning it. A parameter that passes the
//! exclusions yet yields a failing identity (for instance a negative right
//! side) is reported as a family-domain error rather than returned.

mod discover;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::arith::{Rational, Surd};
use crate::error::{Error, Result};
use crate::identity::{
    verify_tuple, verify_variation, AnyIdentity, IdentityTuple, RhsFactor, Sign, VariationIdentity,
};

pub use discover::{discover, DiscoverConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FamilyName {
    Rebak,
    RebakVariant,
    GeneralInfinite,
    LongIdentity,
    SurdHigh,
    SurdLow,
}

impl FamilyName {
    pub const ALL: [FamilyName; 6] = [
        FamilyName::Rebak,
        FamilyName::RebakVariant,
        FamilyName::GeneralInfinite,
        FamilyName::LongIdentity,
        FamilyName::SurdHigh,
        FamilyName::SurdLow,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FamilyName::Rebak => "rebak",
            FamilyName::RebakVariant => "rebak-variant",
            FamilyName::GeneralInfinite => "general-infinite",
            FamilyName::LongIdentity => "long-identity",
            FamilyName::SurdHigh => "surd-high",
            FamilyName::SurdLow => "surd-low",
        }
    }

    /// Parameter keys the family expects, in order.
    pub fn parameters(self) -> &'static [&'static str] {
        match self {
            FamilyName::Rebak | FamilyName::RebakVariant | FamilyName::SurdHigh | FamilyName::SurdLow => &["a"],
            FamilyName::GeneralInfinite => &["k"],
            FamilyName::LongIdentity => &["b", "n"],
        }
    }
}

impl fmt::Display for FamilyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FamilyName::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::Config(format!("unknown family {s:?}")))
    }
}

/// A family name plus its named parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub name: FamilyName,
    pub parameters: BTreeMap<String, Rational>,
}

impl FamilySpec {
    pub fn new(name: FamilyName, parameters: impl IntoIterator<Item = (String, Rational)>) -> Self {
        FamilySpec {
            name,
            parameters: parameters.into_iter().collect(),
        }
    }

    fn param(&self, key: &str) -> Result<&Rational> {
        self.parameters
            .get(key)
            .ok_or_else(|| Error::family(self.name.as_str(), format!("missing parameter {key}")))
    }

    fn int_param(&self, key: &str) -> Result<i64> {
        self.param(key)?
            .to_i64()
            .ok_or_else(|| Error::family(self.name.as_str(), format!("parameter {key} must be an integer")))
    }

    pub fn generate(&self) -> Result<AnyIdentity> {
        let expected = self.name.parameters();
        if let Some(extra) = self.parameters.keys().find(|k| !expected.contains(&k.as_str())) {
            return Err(Error::family(self.name.as_str(), format!("unexpected parameter {extra}")));
        }
        Ok(match self.name {
            FamilyName::Rebak => AnyIdentity::Tuple(rebak_family(self.param("a")?)?),
            FamilyName::RebakVariant => AnyIdentity::Tuple(rebak_variant_family(self.param("a")?)?),
            FamilyName::GeneralInfinite => AnyIdentity::Tuple(general_infinite_family(self.int_param("k")?)?),
            FamilyName::LongIdentity => {
                AnyIdentity::Variation(long_identity(self.int_param("b")?, self.int_param("n")?)?)
            }
            FamilyName::SurdHigh => AnyIdentity::Variation(surd_family_high(self.param("a")?)?),
            FamilyName::SurdLow => AnyIdentity::Variation(surd_family_low(self.param("a")?)?),
        })
    }
}

fn q(num: i64, den: i64) -> Rational {
    Rational::new(num, den).expect("nonzero literal denominator")
}

fn reject_excluded(family: FamilyName, a: &Rational, excluded: &[Rational]) -> Result<()> {
    if excluded.contains(a) {
        return Err(Error::family(family.as_str(), format!("parameter a = {a} is excluded")));
    }
    Ok(())
}

fn checked_tuple(family: FamilyName, values: [Rational; 5]) -> Result<IdentityTuple> {
    let [t, a, x, y, z] = values;
    let id = IdentityTuple::new(t, a, x, y, z).map_err(|e| Error::family(family.as_str(), e.to_string()))?;
    if !verify_tuple(&id) {
        return Err(Error::family(family.as_str(), format!("{id} does not verify (negative right side)")));
    }
    Ok(id)
}

fn checked_variation(family: FamilyName, radicand: Vec<Surd>, rhs: Vec<RhsFactor>) -> Result<VariationIdentity> {
    let v = VariationIdentity::new(Rational::one(), radicand, rhs)
        .map_err(|e| Error::family(family.as_str(), e.to_string()))?;
    if !verify_variation(&v)? {
        return Err(Error::family(family.as_str(), "identity does not verify at this parameter"));
    }
    Ok(v)
}

/// `((a+1)/(a-1), a, 2a+1, 3a+2, 6a+1)`.
pub fn rebak_family(a: &Rational) -> Result<IdentityTuple> {
    let fam = FamilyName::Rebak;
    // -1 is not in the published list but makes t = 0 and A = -1
    let excluded = [q(-2, 3), q(-1, 2), q(-1, 3), q(-1, 6), q(0, 1), q(1, 1), q(-1, 1)];
    reject_excluded(fam, a, &excluded)?;
    let one = Rational::one();
    let lin = |m: i64, c: i64| Rational::from(m) * a + Rational::from(c);
    let t = (a + &one).checked_div(&(a - &one))?;
    checked_tuple(fam, [t, a.clone(), lin(2, 1), lin(3, 2), lin(6, 1)])
}

/// `((a+1)/(a-1), a, 2a+1, 3a+1, 6a+5)`.
pub fn rebak_variant_family(a: &Rational) -> Result<IdentityTuple> {
    let fam = FamilyName::RebakVariant;
    let excluded = [q(-5, 6), q(-2, 3), q(-1, 2), q(-1, 3), q(0, 1), q(1, 1), q(-1, 1)];
    reject_excluded(fam, a, &excluded)?;
    let one = Rational::one();
    let lin = |m: i64, c: i64| Rational::from(m) * a + Rational::from(c);
    let t = (a + &one).checked_div(&(a - &one))?;
    checked_tuple(fam, [t, a.clone(), lin(2, 1), lin(3, 1), lin(6, 5)])
}

/// `(2, k, 5, 1 - 2k^2, 7)`, an infinite family of integral identities.
pub fn general_infinite_family(k: i64) -> Result<IdentityTuple> {
    let fam = FamilyName::GeneralInfinite;
    if matches!(k, -1..=1) {
        return Err(Error::family(fam.as_str(), format!("k = {k} must avoid 0, 1 and -1")));
    }
    let k = Rational::from(k);
    let y = Rational::one() - Rational::from(2) * k.square();
    checked_tuple(fam, [2.into(), k, 5.into(), y, 7.into()])
}

/// The arbitrarily long identity built from `a = 2 - b^2`:
///
/// radicand `{2b+1, 2b-1, 2a+2n-1} ∪ {a-1+i : i = 0..=n}`,
/// right side `(1 - 1/(2b+1))(1 + 1/(2b-1))(1 + 1/(2a+2n-1))`.
pub fn long_identity(b: i64, n: i64) -> Result<VariationIdentity> {
    let fam = FamilyName::LongIdentity;
    let err = |reason: String| Error::family(fam.as_str(), reason);
    if b < 2 {
        return Err(err(format!("b = {b} must be at least 2")));
    }
    if n < 1 {
        return Err(err(format!("n = {n} must be at least 1")));
    }
    let (b, n) = (Rational::from(b), Rational::from(n));
    let a = Rational::from(2) - b.square();
    for bad in [0, 1, 2] {
        if a == Rational::from(bad) {
            return Err(err(format!("a = {a} must avoid 0, 1 and 2")));
        }
    }
    // a + i = 0 for some i in 1..=n  <=>  1 <= -a <= n
    let neg_a = -&a;
    if neg_a >= Rational::one() && neg_a <= n {
        return Err(err(format!("a + {neg_a} = 0 (requires a+1, ..., a+n != 0)")));
    }
    if &a + &n == Rational::one() {
        return Err(err("a + n = 1".into()));
    }

    let two = Rational::from(2);
    let one = Rational::one();
    let tail = &two * &a + &two * &n - &one;
    let mut named: Vec<(String, Rational)> = vec![
        ("2b+1".into(), &two * &b + &one),
        ("2b-1".into(), &two * &b - &one),
        ("2a+2n-1".into(), tail.clone()),
    ];
    let count = n.to_i64().expect("n fits") as usize;
    for i in 0..=count {
        named.push((format!("a-1+{i}"), &a - &one + Rational::from(i as i64)));
    }
    if let Some((name, v)) = named.iter().find(|(_, v)| v.is_trivial()) {
        return Err(err(format!("entry {name} = {v} is trivial")));
    }
    let rhs = vec![
        RhsFactor::new(&two * &b + &one, Sign::Minus),
        RhsFactor::new(&two * &b - &one, Sign::Plus),
        RhsFactor::new(tail, Sign::Plus),
    ];
    let radicand = named.into_iter().map(|(_, v)| Surd::from(v)).collect();
    checked_variation(fam, radicand, rhs)
}

/// Identity over `Q(sqrt(a-1))` for rational `a >= 3`.
pub fn surd_family_high(a: &Rational) -> Result<VariationIdentity> {
    let fam = FamilyName::SurdHigh;
    if *a < Rational::from(3) {
        return Err(Error::family(fam.as_str(), format!("a = {a} must be at least 3")));
    }
    let one = Surd::from(1);
    let r = Surd::sqrt_of(&(a - Rational::one()))?;
    let two_r = Surd::from(2).checked_mul(&r)?;
    let up = two_r.checked_add(&one)?;
    let down = two_r.checked_sub(&one)?;
    let a2 = Rational::from(2) * a + Rational::one();
    let radicand = vec![
        Surd::from(a.clone()),
        Surd::from(a - Rational::one()),
        Surd::from(a2.clone()),
        up.clone(),
        down.clone(),
    ];
    let rhs = vec![
        RhsFactor::new(a2, Sign::Plus),
        RhsFactor::new(up, Sign::Plus),
        RhsFactor::new(down, Sign::Minus),
    ];
    checked_variation(fam, radicand, rhs)
}

/// Identity over `Q(sqrt(2-a))` for rational `a <= 1`, `a` not in {0, 1, -1/2}.
pub fn surd_family_low(a: &Rational) -> Result<VariationIdentity> {
    let fam = FamilyName::SurdLow;
    if *a > Rational::one() {
        return Err(Error::family(fam.as_str(), format!("a = {a} must be at most 1")));
    }
    reject_excluded(fam, a, &[q(0, 1), q(1, 1), q(-1, 2)])?;
    let one = Surd::from(1);
    let r = Surd::sqrt_of(&(Rational::from(2) - a))?;
    let two_r = Surd::from(2).checked_mul(&r)?;
    let up = two_r.checked_add(&one)?;
    let down = two_r.checked_sub(&one)?;
    let a2 = Rational::from(2) * a + Rational::one();
    let radicand = vec![
        Surd::from(a.clone()),
        Surd::from(a - Rational::one()),
        Surd::from(a2.clone()),
        up.clone(),
        down.clone(),
    ];
    let rhs = vec![
        RhsFactor::new(up, Sign::Minus),
        RhsFactor::new(down, Sign::Plus),
        RhsFactor::new(a2, Sign::Plus),
    ];
    checked_variation(fam, radicand, rhs)
}
