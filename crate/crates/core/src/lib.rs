//! Exact verification, construction and enumeration of Ramanujan-type
//! identities
//!
//! ```text
//! sqrt(t (1 - 1/A^2)(1 - 1/x^2)(1 - 1/y^2)(1 - 1/z^2)) = (1 + 1/x)(1 + 1/y)(1 + 1/z)
//! ```
//!
//! and their longer variations over a single real quadratic field. All
//! arithmetic is exact; floating point appears only in tests as a
//! cross-check.

pub mod arith;
pub mod cli;
pub mod construct;
pub mod enumerate;
pub mod error;
pub mod families;
pub mod identity;
pub mod render;

pub use arith::{Rational, Surd};
pub use error::{Error, Result};
pub use identity::{
    classify, verify_tuple, verify_variation, AnyIdentity, Classification, IdentityRecord, IdentityTuple, RhsFactor,
    Sign, VariationIdentity,
};
