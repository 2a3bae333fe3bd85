//! Identity data model and the exact verifier.
//!
//! An [`IdentityTuple`] is a five-variable instance
//! `sqrt(t (1-1/A^2)(1-1/x^2)(1-1/y^2)(1-1/z^2)) = (1+1/x)(1+1/y)(1+1/z)`.
//! A [`VariationIdentity`] generalizes it to any number of radicand and
//! right-hand factors over one quadratic field.
//!
//! Verification never takes a square root: an identity holds iff both sides
//! are nonnegative and the radicand equals the square of the right side.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{Rational, Surd};
use crate::error::{Error, Result};

/// How specific an integral identity is. Ordered from least to most specific.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    NontrivialRational,
    General,
    Perfect,
    SuperPerfect,
    Prime,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::NontrivialRational => "nontrivial-rational",
            Classification::General => "general",
            Classification::Perfect => "perfect",
            Classification::SuperPerfect => "super-perfect",
            Classification::Prime => "prime",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Classification {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "nontrivial-rational" => Classification::NontrivialRational,
            "general" => Classification::General,
            "perfect" => Classification::Perfect,
            "super-perfect" => Classification::SuperPerfect,
            "prime" => Classification::Prime,
            other => return Err(Error::Parse(format!("unknown class {other:?}"))),
        })
    }
}

#[derive(Serialize, Deserialize)]
struct TupleRepr {
    t: Rational,
    #[serde(rename = "A")]
    a: Rational,
    x: Rational,
    y: Rational,
    z: Rational,
}

/// `(t, A, x, y, z)` with `t != 0` and none of `A, x, y, z` in {0, 1, -1}.
///
/// Ordering is lexicographic on `(t, A, x, y, z)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "TupleRepr", into = "TupleRepr")]
pub struct IdentityTuple {
    t: Rational,
    a: Rational,
    x: Rational,
    y: Rational,
    z: Rational,
}

impl TryFrom<TupleRepr> for IdentityTuple {
    type Error = Error;
    fn try_from(r: TupleRepr) -> Result<Self> {
        IdentityTuple::new(r.t, r.a, r.x, r.y, r.z)
    }
}

impl From<IdentityTuple> for TupleRepr {
    fn from(id: IdentityTuple) -> Self {
        TupleRepr {
            t: id.t,
            a: id.a,
            x: id.x,
            y: id.y,
            z: id.z,
        }
    }
}

impl IdentityTuple {
    pub fn new(t: Rational, a: Rational, x: Rational, y: Rational, z: Rational) -> Result<Self> {
        if t.is_zero() {
            return Err(Error::trivial("t", &t));
        }
        for (name, v) in [("A", &a), ("x", &x), ("y", &y), ("z", &z)] {
            if v.is_trivial() {
                return Err(Error::trivial(name, v));
            }
        }
        Ok(IdentityTuple { t, a, x, y, z })
    }

    /// Convenience constructor for integral tuples.
    pub fn from_ints(t: i64, a: i64, x: i64, y: i64, z: i64) -> Result<Self> {
        Self::new(t.into(), a.into(), x.into(), y.into(), z.into())
    }

    pub fn t(&self) -> &Rational {
        &self.t
    }

    /// The `A` variable.
    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn x(&self) -> &Rational {
        &self.x
    }

    pub fn y(&self) -> &Rational {
        &self.y
    }

    pub fn z(&self) -> &Rational {
        &self.z
    }

    /// `[t, A, x, y, z]`.
    pub fn values(&self) -> [&Rational; 5] {
        [&self.t, &self.a, &self.x, &self.y, &self.z]
    }

    /// Same identity with `A` made nonnegative and `x <= y <= z`.
    ///
    /// Both sides depend on `A` only through `A^2` and are symmetric in
    /// `x, y, z`, so the verdict is unchanged.
    pub fn canonical(&self) -> Self {
        let mut xyz = [self.x.clone(), self.y.clone(), self.z.clone()];
        xyz.sort();
        let [x, y, z] = xyz;
        IdentityTuple {
            t: self.t.clone(),
            a: self.a.abs(),
            x,
            y,
            z,
        }
    }

    /// `t (1-1/A^2)(1-1/x^2)(1-1/y^2)(1-1/z^2)`.
    pub fn radicand(&self) -> Rational {
        let f = |v: &Rational| v.radicand_factor().expect("nonzero by invariant");
        &self.t * f(&self.a) * f(&self.x) * f(&self.y) * f(&self.z)
    }

    /// `(1+1/x)(1+1/y)(1+1/z)`.
    pub fn right_side(&self) -> Rational {
        let f = |v: &Rational| v.plus_factor().expect("nonzero by invariant");
        f(&self.x) * f(&self.y) * f(&self.z)
    }
}

impl fmt::Display for IdentityTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {}, {})", self.t, self.a, self.x, self.y, self.z)
    }
}

/// True iff the tuple satisfies the identity exactly.
pub fn verify_tuple(id: &IdentityTuple) -> bool {
    let r = id.radicand();
    let s = id.right_side();
    !r.is_negative() && !s.is_negative() && r == s.square()
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn is_prime_rational(r: &Rational) -> bool {
    r.to_integer()
        .and_then(|n| n.to_u64())
        .is_some_and(is_prime)
}

/// The most specific class of a verified tuple.
pub fn classify(id: &IdentityTuple) -> Result<Classification> {
    if !verify_tuple(id) {
        return Err(Error::Precondition(format!("{id} does not verify")));
    }
    let vals = id.values();
    if !vals.iter().all(|v| v.is_integer()) {
        return Ok(Classification::NontrivialRational);
    }
    // the invariants already exclude 0 and 1 for A, x, y, z
    if !vals.iter().all(|v| v.is_positive()) {
        return Ok(Classification::General);
    }
    let c = id.canonical();
    let strict = c.t < c.a && c.a < c.x && c.x < c.y && c.y < c.z;
    if !strict {
        return Ok(Classification::Perfect);
    }
    if [&c.a, &c.x, &c.y, &c.z].into_iter().all(is_prime_rational) {
        Ok(Classification::Prime)
    } else {
        Ok(Classification::SuperPerfect)
    }
}

/// A verified tuple with its class; the JSON-lines record format.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct IdentityRecord {
    #[serde(flatten)]
    pub tuple: IdentityTuple,
    pub class: Classification,
}

impl IdentityRecord {
    pub fn classified(tuple: IdentityTuple) -> Result<Self> {
        let class = classify(&tuple)?;
        Ok(IdentityRecord { tuple, class })
    }
}

/// Sign of a right-hand factor `(1 + sign/value)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match String::deserialize(d)?.as_str() {
            "+" => Ok(Sign::Plus),
            // U+2212 is accepted as an alias on input
            "-" | "\u{2212}" => Ok(Sign::Minus),
            other => Err(serde::de::Error::custom(format!("bad sign {other:?}"))),
        }
    }
}

/// One right-hand factor `(1 + sign/value)`; serialized as `[value, sign]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "(Surd, Sign)", into = "(Surd, Sign)")]
pub struct RhsFactor {
    pub value: Surd,
    pub sign: Sign,
}

impl From<(Surd, Sign)> for RhsFactor {
    fn from((value, sign): (Surd, Sign)) -> Self {
        RhsFactor { value, sign }
    }
}

impl From<RhsFactor> for (Surd, Sign) {
    fn from(f: RhsFactor) -> Self {
        (f.value, f.sign)
    }
}

impl RhsFactor {
    pub fn new(value: impl Into<Surd>, sign: Sign) -> Self {
        RhsFactor {
            value: value.into(),
            sign,
        }
    }

    /// Positive value with the sign carrying the orientation.
    fn canonical(self) -> Self {
        if self.value.is_negative() {
            RhsFactor {
                value: -self.value,
                sign: self.sign.flip(),
            }
        } else {
            self
        }
    }
}

#[derive(Serialize, Deserialize)]
struct VariationRepr {
    scale: Rational,
    radicand: Vec<Surd>,
    rhs: Vec<RhsFactor>,
}

/// `sqrt(scale * prod(1 - 1/v_i^2)) = prod(1 + s_j/w_j)` over one quadratic field.
///
/// On construction radicand entries are replaced by their absolute values
/// and negative right-hand values are flipped into the sign, so every stored
/// value is positive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "VariationRepr", into = "VariationRepr")]
pub struct VariationIdentity {
    scale: Rational,
    radicand: Vec<Surd>,
    rhs: Vec<RhsFactor>,
}

impl TryFrom<VariationRepr> for VariationIdentity {
    type Error = Error;
    fn try_from(r: VariationRepr) -> Result<Self> {
        VariationIdentity::new(r.scale, r.radicand, r.rhs)
    }
}

impl From<VariationIdentity> for VariationRepr {
    fn from(v: VariationIdentity) -> Self {
        VariationRepr {
            scale: v.scale,
            radicand: v.radicand,
            rhs: v.rhs,
        }
    }
}

impl VariationIdentity {
    pub fn new(scale: Rational, radicand: Vec<Surd>, rhs: Vec<RhsFactor>) -> Result<Self> {
        if scale.is_zero() {
            return Err(Error::trivial("scale", &scale));
        }
        for (i, v) in radicand.iter().enumerate() {
            if v.is_trivial() {
                return Err(Error::trivial(format!("radicand[{i}]"), v));
            }
        }
        for (i, f) in rhs.iter().enumerate() {
            if f.value.is_trivial() {
                return Err(Error::trivial(format!("rhs[{i}]"), &f.value));
            }
        }
        let mut field = BigInt::zero();
        for v in radicand.iter().chain(rhs.iter().map(|f| &f.value)) {
            if v.is_rational() {
                continue;
            }
            if field.is_zero() {
                field = v.d().clone();
            } else if &field != v.d() {
                return Err(Error::IncompatibleField {
                    left: field.to_string(),
                    right: v.d().to_string(),
                });
            }
        }
        Ok(VariationIdentity {
            scale,
            radicand: radicand.into_iter().map(|v| v.abs()).collect(),
            rhs: rhs.into_iter().map(RhsFactor::canonical).collect(),
        })
    }

    pub fn scale(&self) -> &Rational {
        &self.scale
    }

    pub fn radicand_entries(&self) -> &[Surd] {
        &self.radicand
    }

    pub fn rhs_entries(&self) -> &[RhsFactor] {
        &self.rhs
    }

    /// The common radicand `d`, or 0 when every entry is rational.
    pub fn field(&self) -> BigInt {
        self.radicand
            .iter()
            .chain(self.rhs.iter().map(|f| &f.value))
            .map(|v| v.d().clone())
            .find(|d| !d.is_zero())
            .unwrap_or_default()
    }

    /// Entries sorted ascending by value; radicand and right side sorted
    /// independently.
    pub fn sorted(&self) -> Self {
        let by_value = |a: &Surd, b: &Surd| a.cmp_value(b).expect("entries share a field");
        let mut radicand = self.radicand.clone();
        radicand.sort_by(by_value);
        let mut rhs = self.rhs.clone();
        rhs.sort_by(|a, b| by_value(&a.value, &b.value).then(a.sign.cmp(&b.sign)));
        VariationIdentity {
            scale: self.scale.clone(),
            radicand,
            rhs,
        }
    }

    pub fn left_radicand(&self) -> Result<Surd> {
        self.radicand
            .iter()
            .try_fold(Surd::from(self.scale.clone()), |acc, v| acc.checked_mul(&v.radicand_factor()?))
    }

    pub fn right_side(&self) -> Result<Surd> {
        self.rhs
            .iter()
            .try_fold(Surd::from(1), |acc, f| acc.checked_mul(&f.value.signed_factor(f.sign.as_i8())?))
    }
}

/// True iff the variation holds exactly in its quadratic field.
pub fn verify_variation(v: &VariationIdentity) -> Result<bool> {
    let left = v.left_radicand()?;
    let right = v.right_side()?;
    Ok(left.signum() >= 0 && right.signum() >= 0 && left == right.square())
}

impl From<&IdentityTuple> for VariationIdentity {
    fn from(id: &IdentityTuple) -> Self {
        let radicand = [&id.a, &id.x, &id.y, &id.z]
            .into_iter()
            .map(|v| Surd::from(v.clone()))
            .collect();
        let rhs = [&id.x, &id.y, &id.z]
            .into_iter()
            .map(|v| RhsFactor::new(v.clone(), Sign::Plus))
            .collect();
        VariationIdentity::new(id.t.clone(), radicand, rhs).expect("tuple invariants carry over")
    }
}

/// Either kind of identity; JSON input is told apart by its keys.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AnyIdentity {
    Tuple(IdentityTuple),
    Variation(VariationIdentity),
}

impl AnyIdentity {
    pub fn verify(&self) -> Result<bool> {
        match self {
            AnyIdentity::Tuple(id) => Ok(verify_tuple(id)),
            AnyIdentity::Variation(v) => verify_variation(v),
        }
    }
}
