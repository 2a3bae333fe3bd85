//! Building identities from `(t, A, z, k)` and recovering `k` from an identity.
//!
//! Given nonzero `t, k` and `A, z` outside {0, 1, -1}, set
//!
//! ```text
//! gamma = [(A^2-1)t - A^2] k z - [(A^2-1)t + A^2] k
//! beta  = [(A^2-1)t + A^2] k z - [(A^2-1)t - A^2] k - 1
//! ```
//!
//! Then `x, y` are the roots of `X^2 - gamma X + beta`. Conversely every
//! identity determines `k = (xy - (x+y) + 1) / (2 A^2 (z+1))`.

use serde::{Deserialize, Serialize};

use crate::arith::{Rational, Surd};
use crate::error::{Error, Result};
use crate::identity::{verify_tuple, IdentityTuple};

/// The roots of `X^2 - gamma X + beta`, larger first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Roots {
    Rational { x: Rational, y: Rational },
    Surd { x: Surd, y: Surd },
    None,
}

/// Side conditions for the constructed `(t, A, x, y, z)` to be a nontrivial identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub discriminant_nonnegative: bool,
    pub beta_nonzero: bool,
    /// Excludes the root 1.
    pub one_minus_gamma_plus_beta_nonzero: bool,
    /// Excludes the root -1, at which both sides collapse to 0.
    pub minus_one_not_root: bool,
    /// `t, k != 0` and `A, z` outside {0, 1, -1}. Always true on a built result,
    /// since violating inputs are rejected up front.
    pub inputs_nontrivial: bool,
    /// `(1+1/x)(1+1/y)(1+1/z) >= 0`. The root conditions only give the squared
    /// identity; the square root additionally needs a nonnegative right side.
    pub right_side_nonnegative: bool,
}

impl ConditionReport {
    pub fn all(&self) -> bool {
        self.discriminant_nonnegative
            && self.beta_nonzero
            && self.one_minus_gamma_plus_beta_nonzero
            && self.minus_one_not_root
            && self.inputs_nontrivial
            && self.right_side_nonnegative
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionResult {
    pub t: Rational,
    #[serde(rename = "A")]
    pub a: Rational,
    pub z: Rational,
    pub k: Rational,
    pub gamma: Rational,
    pub beta: Rational,
    pub discriminant: Rational,
    pub roots: Roots,
    pub conditions: ConditionReport,
}

impl ConstructionResult {
    /// The assembled tuple (with `x <= y`) when every condition holds and the
    /// roots are rational.
    pub fn identity(&self) -> Option<IdentityTuple> {
        if !self.conditions.all() {
            return None;
        }
        let Roots::Rational { x, y } = &self.roots else {
            return None;
        };
        IdentityTuple::new(
            self.t.clone(),
            self.a.clone(),
            y.clone(),
            x.clone(),
            self.z.clone(),
        )
        .ok()
    }
}

fn check_inputs(t: &Rational, a: &Rational, z: &Rational, k: &Rational) -> Result<()> {
    if t.is_zero() {
        return Err(Error::trivial("t", t));
    }
    if k.is_zero() {
        return Err(Error::trivial("k", k));
    }
    if a.is_trivial() {
        return Err(Error::trivial("A", a));
    }
    if z.is_trivial() {
        return Err(Error::trivial("z", z));
    }
    Ok(())
}

/// `(gamma, beta)` for the given parameters.
pub fn gamma_beta(t: &Rational, a: &Rational, z: &Rational, k: &Rational) -> Result<(Rational, Rational)> {
    check_inputs(t, a, z, k)?;
    let a2 = a.square();
    let ta = (&a2 - Rational::one()) * t;
    let minus = &ta - &a2;
    let plus = &ta + &a2;
    let gamma = &minus * k * z - &plus * k;
    let beta = &plus * k * z - &minus * k - Rational::one();
    Ok((gamma, beta))
}

/// `((z-1)(A^2-1)kt - A^2 k(1+z) - 2)^2 - 8 A^2 k (1+z)`, the discriminant
/// expanded directly in the parameters.
pub fn discriminant_closed_form(t: &Rational, a: &Rational, z: &Rational, k: &Rational) -> Rational {
    let one = Rational::one();
    let a2 = a.square();
    let two = Rational::from(2);
    let inner = (z - &one) * (&a2 - &one) * k * t - &a2 * k * (&one + z) - &two;
    inner.square() - Rational::from(8) * &a2 * k * (&one + z)
}

/// Roots of `X^2 - gamma X + beta = 0`, larger first.
pub fn solve_roots(gamma: &Rational, beta: &Rational) -> Roots {
    let disc = gamma.square() - Rational::from(4) * beta;
    if disc.is_negative() {
        return Roots::None;
    }
    let half = Rational::new(1, 2).expect("nonzero denominator");
    match disc.sqrt().expect("nonnegative") {
        Some(s) => Roots::Rational {
            x: (gamma + &s) * &half,
            y: (gamma - &s) * &half,
        },
        None => {
            let root = Surd::sqrt_of(&disc).expect("nonnegative");
            let centre = Surd::from(gamma * &half);
            let offset = Surd::new(Rational::zero(), root.q() * &half, root.d().clone())
                .expect("squarefree radicand");
            Roots::Surd {
                x: centre.checked_add(&offset).expect("same field"),
                y: centre.checked_sub(&offset).expect("same field"),
            }
        }
    }
}

/// Runs the full construction and reports every side condition.
pub fn build_tuple(t: &Rational, a: &Rational, z: &Rational, k: &Rational) -> Result<ConstructionResult> {
    let (gamma, beta) = gamma_beta(t, a, z, k)?;
    let one = Rational::one();
    let discriminant = gamma.square() - Rational::from(4) * &beta;
    let roots = solve_roots(&gamma, &beta);
    // (1+1/x)(1+1/y) = (1 + gamma + beta) / beta whatever the roots are
    let right_side_nonnegative = if beta.is_zero() {
        false
    } else {
        let xy_part = (&one + &gamma + &beta).checked_div(&beta)?;
        (xy_part * z.plus_factor()?).signum() >= 0
    };
    let conditions = ConditionReport {
        discriminant_nonnegative: !discriminant.is_negative(),
        beta_nonzero: !beta.is_zero(),
        one_minus_gamma_plus_beta_nonzero: !(&one - &gamma + &beta).is_zero(),
        minus_one_not_root: !(&one + &gamma + &beta).is_zero(),
        inputs_nontrivial: true,
        right_side_nonnegative,
    };
    Ok(ConstructionResult {
        t: t.clone(),
        a: a.clone(),
        z: z.clone(),
        k: k.clone(),
        gamma,
        beta,
        discriminant,
        roots,
        conditions,
    })
}

/// The `k` that produces `id`, if `id` is an identity.
///
/// `k` comes from `xy - (x+y) + 1 = 2k A^2 (z+1)` and is accepted only when
/// the companion relation `xy + (x+y) + 1 = 2k t (A^2-1)(z-1)` holds and the
/// tuple verifies.
pub fn recover_k(id: &IdentityTuple) -> Result<Option<Rational>> {
    let one = Rational::one();
    let two = Rational::from(2);
    let (t, a, x, y, z) = (id.t(), id.a(), id.x(), id.y(), id.z());
    let a2 = a.square();
    let denom = &two * &a2 * (z + &one);
    if denom.is_zero() {
        return Err(Error::DivisionByZero("recover_k needs z != -1".into()));
    }
    let xy = x * y;
    let s = x + y;
    let k = (&xy - &s + &one).checked_div(&denom)?;
    let companion = &xy + &s + &one == &two * &k * t * (&a2 - &one) * (z - &one);
    Ok((companion && verify_tuple(id)).then_some(k))
}
