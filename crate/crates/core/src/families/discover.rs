//! Seeded random search for identities with a fixed `t`.

use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arith::Rational;
use crate::construct::build_tuple;
use crate::error::{Error, Result};
use crate::identity::IdentityTuple;

#[derive(Clone, Debug)]
pub struct DiscoverConfig {
    pub seed: u64,
    pub trials: u64,
    pub t: Rational,
    pub a_range: RangeInclusive<i64>,
    pub z_range: RangeInclusive<i64>,
    pub k_numerator_range: RangeInclusive<i64>,
    pub k_denominator_range: RangeInclusive<i64>,
}

impl DiscoverConfig {
    pub fn new(seed: u64, trials: u64, t: Rational) -> Self {
        DiscoverConfig {
            seed,
            trials,
            t,
            a_range: 2..=20,
            z_range: -50..=50,
            k_numerator_range: -10..=10,
            k_denominator_range: 1..=12,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Config("trials must be positive".into()));
        }
        if self.t.is_zero() {
            return Err(Error::Config("t must be nonzero".into()));
        }
        let has_nontrivial = |r: &RangeInclusive<i64>| r.clone().any(|v| !matches!(v, -1..=1));
        for (name, r) in [("A", &self.a_range), ("z", &self.z_range)] {
            if r.is_empty() || !has_nontrivial(r) {
                return Err(Error::Config(format!("{name} range {r:?} has no value outside {{0, 1, -1}}")));
            }
        }
        if self.k_numerator_range.is_empty() || self.k_numerator_range.clone().all(|v| v == 0) {
            return Err(Error::Config("k numerator range has no nonzero value".into()));
        }
        if self.k_denominator_range.is_empty() || *self.k_denominator_range.start() < 1 {
            return Err(Error::Config("k denominator range must be nonempty and positive".into()));
        }
        Ok(())
    }

    fn trial(&self, index: u64) -> Option<IdentityTuple> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        let a = rng.gen_range(self.a_range.clone());
        let z = rng.gen_range(self.z_range.clone());
        let num = rng.gen_range(self.k_numerator_range.clone());
        let den = rng.gen_range(self.k_denominator_range.clone());
        let k = Rational::new(num, den).ok()?;
        let result = build_tuple(&self.t, &a.into(), &z.into(), &k).ok()?;
        result.identity().map(|id| id.canonical())
    }
}

/// Samples `(A, z, k = p/m)` and keeps the parameters whose construction
/// yields a rational identity.
///
/// Trial `i` draws from its own ChaCha stream, so the output depends only on
/// the configuration, never on thread count. Results are canonicalized
/// (`A > 0`, `x <= y <= z`), sorted and deduplicated.
pub fn discover(config: &DiscoverConfig) -> Result<Vec<IdentityTuple>> {
    config.validate()?;
    let mut found: Vec<IdentityTuple> = (0..config.trials)
        .into_par_iter()
        .filter_map(|i| config.trial(i))
        .collect();
    found.sort();
    found.dedup();
    Ok(found)
}
