//! Exact scalar arithmetic: rationals and real quadratic surds.

mod rational;
mod surd;

pub use rational::Rational;
pub use surd::{squarefree_split, Surd};
