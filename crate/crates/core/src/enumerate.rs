//! Exhaustive search for perfect and super-perfect identities.
//!
//! For positive integers the identity is equivalent to
//!
//! ```text
//! t = h(A) g(x) g(y) g(z),   h(A) = A^2/(A^2-1),   g(v) = (v+1)/(v-1)
//! ```
//!
//! Every factor exceeds 1 and decreases towards 1 as its argument grows.
//! Fixing the variables in increasing order therefore bounds each one by the
//! residual product, and the last variable is solved in closed form. All
//! comparisons are exact.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::Rational;
use crate::identity::{is_prime, verify_tuple, Classification, IdentityRecord, IdentityTuple};

/// Values of `t` swept for super-perfect identities.
pub const SUPER_PERFECT_T_RANGE: std::ops::RangeInclusive<u64> = 2..=6;

/// Largest `t` of any perfect identity: `h(2) g(2)^3 = (4/3) * 27`.
pub const PERFECT_T_MAX: u64 = 36;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EnumerationReport {
    /// Sorted lexicographically on `(t, A, x, y, z)`, no duplicates.
    pub identities: Vec<IdentityRecord>,
    pub candidates_examined: u64,
    pub wall_time: Duration,
}

/// Summary line written next to the JSON-lines output.
#[derive(Clone, Debug, Serialize)]
pub struct EnumerationSummary {
    pub class: String,
    pub count: usize,
    pub candidates_examined: u64,
    pub wall_time_ms: f64,
}

impl EnumerationReport {
    pub fn tuples(&self) -> impl Iterator<Item = &IdentityTuple> {
        self.identities.iter().map(|r| &r.tuple)
    }

    pub fn summary(&self, class: &str) -> EnumerationSummary {
        EnumerationSummary {
            class: class.to_string(),
            count: self.identities.len(),
            candidates_examined: self.candidates_examined,
            wall_time_ms: self.wall_time.as_secs_f64() * 1e3,
        }
    }

    fn from_tuples(tuples: Vec<IdentityTuple>, candidates: u64, started: Instant) -> Self {
        let mut identities: Vec<IdentityRecord> = tuples
            .into_iter()
            .map(|t| IdentityRecord::classified(t).expect("search emits verified tuples"))
            .collect();
        identities.sort();
        identities.dedup();
        EnumerationReport {
            identities,
            candidates_examined: candidates,
            wall_time: started.elapsed(),
        }
    }
}

fn h(a: u64) -> Rational {
    let a2 = BigInt::from(a) * BigInt::from(a);
    Rational::new(a2.clone(), a2 - 1).expect("a >= 2")
}

fn g(v: u64) -> Rational {
    Rational::new(v + 1, v - 1).expect("v >= 2")
}

fn pow(r: &Rational, e: usize) -> Rational {
    std::iter::repeat_n(r, e).fold(Rational::one(), |acc, f| acc * f)
}

/// The integer `v >= 2` with `g(v) = c`, if any.
fn invert_g(c: &Rational) -> Option<u64> {
    let one = Rational::one();
    if *c <= one {
        return None;
    }
    let v = (c + &one).checked_div(&(c - &one)).ok()?;
    v.to_integer()?.to_u64().filter(|&v| v >= 2)
}

/// The integer `A >= 2` with `h(A) = c`, if any: `A^2 = c / (c - 1)`.
fn invert_h(c: &Rational) -> Option<u64> {
    let one = Rational::one();
    if *c <= one {
        return None;
    }
    let a2 = c.checked_div(&(c - &one)).ok()?.to_integer()?;
    let a = a2.sqrt();
    (&a * &a == a2).then(|| a.to_u64()).flatten().filter(|&a| a >= 2)
}

/// Closed-form `z` with `t = h(A) g(x) g(y) g(z)`, when it is an integer `>= 2`.
pub fn solve_z(t: &Rational, a: u64, x: u64, y: u64) -> Option<u64> {
    if a < 2 || x < 2 || y < 2 {
        return None;
    }
    let r = t.checked_div(&(h(a) * g(x) * g(y))).ok()?;
    invert_g(&r)
}

struct SuperCell {
    t: u64,
    a: u64,
    x: u64,
    /// `h(A) g(x)`
    partial: Rational,
}

/// All super-perfect identities (`t < A < x < y < z`) with `t` in `t_range`.
pub fn enumerate_super_perfect_in(t_range: std::ops::RangeInclusive<u64>) -> EnumerationReport {
    let started = Instant::now();
    let mut cells = Vec::new();
    for t in t_range {
        let tr = Rational::from(t as i64);
        for a in t + 1.. {
            let ha = h(a);
            // x = A + 1 maximizes the remaining product
            if &ha * pow(&g(a + 1), 3) < tr {
                break;
            }
            for x in a + 1.. {
                let gx = g(x);
                if &ha * pow(&gx, 3) < tr {
                    break;
                }
                let partial = &ha * &gx;
                if partial >= tr {
                    continue;
                }
                cells.push(SuperCell { t, a, x, partial });
            }
        }
    }

    let (tuples, counts): (Vec<Vec<IdentityTuple>>, Vec<u64>) = cells
        .par_iter()
        .map(|cell| {
            let tr = Rational::from(cell.t as i64);
            let mut found = Vec::new();
            let mut examined = 0u64;
            for y in cell.x + 1.. {
                let gy = g(y);
                if &cell.partial * gy.square() < tr {
                    break;
                }
                if &cell.partial * &gy >= tr {
                    continue;
                }
                examined += 1;
                if let Some(z) = solve_z(&tr, cell.a, cell.x, y).filter(|&z| z > y) {
                    let id = IdentityTuple::from_ints(cell.t as i64, cell.a as i64, cell.x as i64, y as i64, z as i64)
                        .expect("all values exceed 1");
                    debug_assert!(verify_tuple(&id));
                    found.push(id);
                }
            }
            (found, examined)
        })
        .unzip();

    EnumerationReport::from_tuples(
        tuples.into_iter().flatten().collect(),
        counts.into_iter().sum(),
        started,
    )
}

/// All super-perfect identities.
pub fn enumerate_super_perfect() -> EnumerationReport {
    enumerate_super_perfect_in(SUPER_PERFECT_T_RANGE)
}

/// Depth-first search over the sorted values `v0 <= v1 <= v2 <= v3` of
/// `{A, x, y, z}`, where position `a_pos` carries `A`.
struct PerfectSearch {
    t: Rational,
    a_pos: usize,
}

impl PerfectSearch {
    fn factor(&self, pos: usize, v: u64) -> Rational {
        if pos == self.a_pos {
            h(v)
        } else {
            g(v)
        }
    }

    fn run(&self, depth: usize, lower: u64, fixed: &Rational, vals: &mut [u64; 4], out: &mut Vec<[u64; 4]>, examined: &mut u64) {
        if depth == 3 {
            *examined += 1;
            let c = self.t.checked_div(fixed).expect("fixed product is positive");
            let last = if self.a_pos == 3 { invert_h(&c) } else { invert_g(&c) };
            if let Some(v) = last.filter(|&v| v >= lower) {
                vals[3] = v;
                out.push(*vals);
            }
            return;
        }
        let remaining = 3 - depth;
        for v in lower.. {
            let p = fixed * self.factor(depth, v);
            // every later factor is at most g(v)
            if &p * pow(&g(v), remaining) < self.t {
                break;
            }
            if p >= self.t {
                continue;
            }
            vals[depth] = v;
            self.run(depth + 1, v, &p, vals, out, examined);
        }
    }

    fn assemble(&self, t: u64, vals: [u64; 4]) -> IdentityTuple {
        let a = vals[self.a_pos];
        let mut rest = vals.iter().enumerate().filter(|(i, _)| *i != self.a_pos).map(|(_, &v)| v as i64);
        let (x, y, z) = (rest.next().unwrap(), rest.next().unwrap(), rest.next().unwrap());
        IdentityTuple::from_ints(t as i64, a as i64, x, y, z).expect("all values exceed 1")
    }
}

/// All perfect identities (positive integers, `x <= y <= z`, `A` anywhere).
pub fn enumerate_perfect() -> EnumerationReport {
    let started = Instant::now();
    let jobs: Vec<(u64, usize)> = (2..=PERFECT_T_MAX)
        .flat_map(|t| (0..4).map(move |pos| (t, pos)))
        .collect();
    let (tuples, counts): (Vec<Vec<IdentityTuple>>, Vec<u64>) = jobs
        .par_iter()
        .map(|&(t, a_pos)| {
            let search = PerfectSearch {
                t: Rational::from(t as i64),
                a_pos,
            };
            let mut raw = Vec::new();
            let mut examined = 0;
            search.run(0, 2, &Rational::one(), &mut [0; 4], &mut raw, &mut examined);
            let found = raw
                .into_iter()
                .map(|vals| search.assemble(t, vals))
                .inspect(|id| debug_assert!(verify_tuple(id)))
                .collect();
            (found, examined)
        })
        .unzip();
    EnumerationReport::from_tuples(
        tuples.into_iter().flatten().collect(),
        counts.into_iter().sum(),
        started,
    )
}

/// Keeps identities whose `A, x, y, z` are all prime.
pub fn prime_filter(report: &EnumerationReport) -> EnumerationReport {
    let prime = |r: &Rational| r.to_integer().and_then(|n| n.to_u64()).is_some_and(is_prime);
    let identities = report
        .identities
        .iter()
        .filter(|rec| {
            let id = &rec.tuple;
            [id.a(), id.x(), id.y(), id.z()].into_iter().all(prime)
        })
        .cloned()
        .collect();
    EnumerationReport {
        identities,
        candidates_examined: report.candidates_examined,
        wall_time: report.wall_time,
    }
}

/// Tuples of a report restricted to a class and above.
pub fn at_least(report: &EnumerationReport, class: Classification) -> Vec<IdentityTuple> {
    report
        .identities
        .iter()
        .filter(|r| r.class >= class)
        .map(|r| r.tuple.clone())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_z_examples() {
        let two = Rational::from(2);
        assert_eq!(solve_z(&two, 3, 7, 11), Some(19));
        assert_eq!(solve_z(&two, 3, 4, 61), Some(63));
        assert_eq!(solve_z(&two, 3, 4, 38), None);
        assert_eq!(solve_z(&two, 1, 4, 38), None);
    }

    #[test]
    fn inverses() {
        assert_eq!(invert_g(&g(17)), Some(17));
        assert_eq!(invert_h(&h(9)), Some(9));
        assert_eq!(invert_g(&Rational::one()), None);
        assert_eq!(invert_h(&Rational::from(2)), None); // A^2 = 2
    }

    #[test]
    fn super_perfect_contains_ramanujan() {
        let report = enumerate_super_perfect();
        let target = IdentityTuple::from_ints(2, 3, 7, 11, 19).unwrap();
        assert!(report.tuples().any(|t| *t == target));
        assert!(report.tuples().all(|t| *t.t() == Rational::from(2)));
        assert!(report.candidates_examined > 0);
    }

    #[test]
    fn prime_filter_of_empty() {
        let empty = EnumerationReport::default();
        assert!(prime_filter(&empty).identities.is_empty());
    }

    #[test]
    fn composite_entries_are_filtered() {
        let rec = IdentityRecord::classified(IdentityTuple::from_ints(2, 6, 7, 9, 13).unwrap()).unwrap();
        let report = EnumerationReport {
            identities: vec![rec],
            ..Default::default()
        };
        assert!(prime_filter(&report).identities.is_empty());
    }
}
