//! Shared fixtures for the integration tests.

#![allow(dead_code)]

use std::collections::BTreeSet;

use ramid::families::{
    general_infinite_family, long_identity, rebak_family, rebak_variant_family, surd_family_high, surd_family_low,
};
use ramid::{IdentityTuple, Rational, Sign, Surd, VariationIdentity};
use twofloat::TwoFloat;

pub fn q(s: &str) -> Rational {
    s.parse().unwrap()
}

pub fn golden_path() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("data/appendix_super_perfect.jsonl")
}

/// Every line of the golden file, in printed order (duplicates kept).
pub fn golden_lines() -> Vec<IdentityTuple> {
    std::fs::read_to_string(golden_path())
        .unwrap()
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

pub fn golden_set() -> BTreeSet<IdentityTuple> {
    golden_lines().into_iter().collect()
}

/// A grid of small nonzero rationals `p/m`.
pub fn rational_grid() -> Vec<Rational> {
    let mut out = Vec::new();
    for m in 1..=4 {
        for p in -12..=12 {
            let r = Rational::new(p, m).unwrap();
            if r.denom() == &m.into() {
                out.push(r);
            }
        }
    }
    out
}

/// All family tuples over the test grids.
pub fn family_tuples() -> Vec<IdentityTuple> {
    let mut out = Vec::new();
    for a in rational_grid() {
        out.extend(rebak_family(&a).ok());
        out.extend(rebak_variant_family(&a).ok());
    }
    for k in (-50..=-2).chain(2..=50) {
        out.push(general_infinite_family(k).unwrap());
    }
    out
}

/// Variations from the long-identity and surd families.
pub fn family_variations() -> Vec<VariationIdentity> {
    let mut out = Vec::new();
    for b in 2..=9 {
        for n in 1..=8 {
            out.extend(long_identity(b, n).ok());
        }
    }
    for a in rational_grid() {
        out.extend(surd_family_high(&a).ok());
        out.extend(surd_family_low(&a).ok());
    }
    out
}

fn tf_int(n: &num_bigint::BigInt) -> TwoFloat {
    use num_traits::ToPrimitive;
    // split into two exact halves so values up to ~2^100 convert without loss
    let base = num_bigint::BigInt::from(1u64 << 50);
    let (hi, lo) = (n / &base, n % &base);
    TwoFloat::from(hi.to_f64().unwrap()) * TwoFloat::from((1u64 << 50) as f64) + TwoFloat::from(lo.to_f64().unwrap())
}

/// Double-double reciprocal. The crate's own `TwoFloat / TwoFloat` forms the
/// residual `1 - y*(1/y)` without a fused multiply-add, which loses the low
/// word; one Newton step on exact products restores full precision.
pub fn tf_recip(y: TwoFloat) -> TwoFloat {
    let one = TwoFloat::from(1.0);
    let r0 = TwoFloat::from(y.hi().recip());
    r0 + r0 * (one - y * r0)
}

pub fn tf_div(x: TwoFloat, y: TwoFloat) -> TwoFloat {
    let r = tf_recip(y);
    let q = x * r;
    // second correction for the quotient itself
    q + r * (x - y * q)
}

pub fn tf_rational(r: &Rational) -> TwoFloat {
    tf_div(tf_int(r.numer()), tf_int(r.denom()))
}

pub fn tf_surd(s: &Surd) -> TwoFloat {
    tf_rational(s.p()) + tf_rational(s.q()) * tf_int(s.d()).sqrt()
}

/// Relative gap between the two sides of a tuple identity in double-double
/// arithmetic. NaN when the radicand is negative.
pub fn float_gap_tuple(id: &IdentityTuple) -> f64 {
    let one = TwoFloat::from(1.0);
    let [t, a, x, y, z] = id.values().map(tf_rational);
    let rad = |v: TwoFloat| one - tf_recip(v * v);
    let left = (t * rad(a) * rad(x) * rad(y) * rad(z)).sqrt();
    let right = (one + tf_recip(x)) * (one + tf_recip(y)) * (one + tf_recip(z));
    relative_gap(left, right)
}

pub fn float_gap_variation(v: &VariationIdentity) -> f64 {
    let one = TwoFloat::from(1.0);
    let mut left = tf_rational(v.scale());
    for e in v.radicand_entries() {
        let e = tf_surd(e);
        left *= one - tf_recip(e * e);
    }
    let mut right = one;
    for f in v.rhs_entries() {
        let w = tf_surd(&f.value);
        right *= if f.sign == Sign::Plus { one + tf_recip(w) } else { one - tf_recip(w) };
    }
    relative_gap(left.sqrt(), right)
}

fn relative_gap(left: TwoFloat, right: TwoFloat) -> f64 {
    let gap = tf_div((left - right).abs(), right.abs());
    gap.hi() + gap.lo()
}

pub const FLOAT_TOLERANCE: f64 = 1e-10;

/// Floating verdict: both sides agree to the tolerance.
pub fn float_verdict(gap: f64) -> bool {
    gap <= FLOAT_TOLERANCE
}

/// Brute-force search in machine integers: every `2 <= A < x < y <= y_max`
/// with `t` in `t_range` and an integer `z > y` from the closed form.
///
/// With `N = t(A^2-1)(x-1)(y-1)` and `D = A^2(x+1)(y+1)` the identity reads
/// `g(z) = N/D`, so `z = (N+D)/(N-D)`; `z > y` iff `N + D > y (N - D)`.
pub fn brute_force_super_perfect(t_range: std::ops::RangeInclusive<u64>, y_max: u64) -> BTreeSet<IdentityTuple> {
    use rayon::prelude::*;
    let jobs: Vec<(u64, u64)> = t_range
        .flat_map(|t| (2..y_max).map(move |a| (t, a)))
        .collect();
    jobs.par_iter()
        .flat_map_iter(|&(t, a)| {
            let mut found = Vec::new();
            let a2 = a * a;
            for x in a + 1..y_max {
                let nx = t * (a2 - 1) * (x - 1);
                let dx = a2 * (x + 1);
                for y in x + 1..=y_max {
                    let n = nx * (y - 1);
                    let d = dx * (y + 1);
                    if n <= d || n + d <= y * (n - d) {
                        continue;
                    }
                    if (n + d) % (n - d) == 0 {
                        let z = (n + d) / (n - d);
                        found.push(IdentityTuple::from_ints(t as i64, a as i64, x as i64, y as i64, z as i64).unwrap());
                    }
                }
            }
            found
        })
        .collect()
}
