//! Random colorings, Behrend-type 3-AP-free sets and collinear
//! isosceles-free point sets.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coloring::{ColoredCompleteGraph, LocalSpec};
use crate::combin::pairs;
use crate::error::{Error, Result};
use crate::number_sets::{IntegerSet, Point, PointSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomColoringConfig {
    pub n: usize,
    pub colors: u32,
    pub seed: u64,
}

/// Independent uniform color per edge, drawn in upper-triangle order from
/// ChaCha8 seeded with `seed` (stream 0). Unused colors are squeezed out.
pub fn random_coloring(cfg: RandomColoringConfig) -> Result<ColoredCompleteGraph> {
    random_coloring_on_stream(cfg, 0)
}

fn random_coloring_on_stream(cfg: RandomColoringConfig, stream: u64) -> Result<ColoredCompleteGraph> {
    if cfg.colors == 0 {
        return Err(Error::InvalidArgument("color count must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(stream);
    let labels: Vec<u32> = (0..pairs(cfg.n)).map(|_| rng.random_range(0..cfg.colors)).collect();
    ColoredCompleteGraph::from_labels(cfg.n, &labels)
}

/// Color budget of the probabilistic upper bound,
/// `ceil(n^((k-2) / (C(k,2) - ell + 1)))`, computed exactly.
pub fn eg_color_count(n: u64, spec: LocalSpec) -> Result<u64> {
    let num = spec.k.saturating_sub(2) as u32;
    let den = spec.pairs() as i64 - spec.ell as i64 + 1;
    if den <= 0 {
        return Err(Error::InvalidSpec {
            k: spec.k,
            ell: spec.ell,
            reason: "exponent denominator C(k,2) - ell + 1 must be positive",
        });
    }
    let den = den as u32;
    let target = BigUint::from(n).pow(num);
    let reaches = |x: u64| BigUint::from(x).pow(den) >= target;
    let mut x = (n as f64).powf(f64::from(num) / f64::from(den)).ceil() as u64;
    while x > 0 && reaches(x - 1) {
        x -= 1;
    }
    while !reaches(x) {
        x += 1;
    }
    Ok(x)
}

/// Satisfying count out of `trials` random colorings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyEstimate {
    pub satisfied: u64,
    pub trials: u64,
}

impl PropertyEstimate {
    pub fn fraction(&self) -> f64 {
        self.satisfied as f64 / self.trials as f64
    }
}

/// Monte-Carlo estimate of the probability that a uniform random
/// `colors`-coloring of `K_n` has the local property. Trial `t` uses the
/// ChaCha8 stream `t` under `seed`, so the result does not depend on the
/// thread count.
pub fn estimate_property_probability(
    n: usize,
    colors: u32,
    spec: LocalSpec,
    trials: u64,
    seed: u64,
) -> Result<PropertyEstimate> {
    spec.validate()?;
    if trials == 0 {
        return Err(Error::InvalidArgument("at least one trial is required".into()));
    }
    if spec.k > n {
        return Err(Error::KExceedsSize { k: spec.k, size: n });
    }
    let cfg = RandomColoringConfig { n, colors, seed };
    let satisfied = (0..trials)
        .into_par_iter()
        .map(|t| -> Result<u64> {
            let g = random_coloring_on_stream(cfg, t)?;
            Ok(u64::from(g.verify_local_property(spec)?.holds))
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    Ok(PropertyEstimate { satisfied, trials })
}

/// Parameters of a digit-sphere construction: numbers whose base
/// `2*digit_bound - 1` expansion has `digits` digits, each below
/// `digit_bound`, with squared digit norm `radius`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BehrendParams {
    pub digits: u32,
    pub digit_bound: u64,
    pub radius: u64,
    /// Size of the chosen sphere before truncation.
    pub sphere_size: u64,
}

impl BehrendParams {
    pub fn base(&self) -> u64 {
        2 * self.digit_bound - 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BehrendSet {
    pub params: BehrendParams,
    pub set: IntegerSet,
}

const MAX_DIGITS: u32 = 40;
const VALUE_LIMIT: u128 = 1 << 62;

/// Counts digit vectors in `{0..d-1}^digits` by squared norm.
fn sphere_counts(digits: u32, d: u64) -> Vec<u64> {
    let sq = (d - 1) * (d - 1);
    let mut counts = vec![1u64];
    for level in 1..=digits as u64 {
        let mut next = vec![0u64; (level * sq + 1) as usize];
        for (r, &c) in counts.iter().enumerate().filter(|(_, &c)| c > 0) {
            for x in 0..d {
                next[r + (x * x) as usize] += c;
            }
        }
        counts = next;
    }
    counts
}

/// Densest sphere `(radius, size)`, least radius on ties.
fn densest_sphere(digits: u32, d: u64) -> (u64, u64) {
    let counts = sphere_counts(digits, d);
    let mut best = (0, 0);
    for (r, &c) in counts.iter().enumerate() {
        if c > best.1 {
            best = (r as u64, c);
        }
    }
    best
}

fn value_bound(digits: u32, d: u64) -> Option<u128> {
    u128::from(2 * d - 1).checked_pow(digits).filter(|&v| v <= VALUE_LIMIT)
}

/// Largest `d >= 2` with `(2d - 1)^digits < limit`.
fn max_digit_bound(digits: u32, limit: u128) -> Option<u64> {
    let below = |d: u64| value_bound(digits, d).is_some_and(|v| v < limit);
    let mut d = ((limit as f64).powf(1.0 / f64::from(digits)) as u64).div_ceil(2) + 1;
    while d >= 2 && !below(d) {
        d -= 1;
    }
    if d < 2 {
        return None;
    }
    while below(d + 1) {
        d += 1;
    }
    Some(d)
}

/// Picks digit count and digit bound so that the densest sphere has at
/// least `target` points and the largest possible value `base^digits` is
/// as small as possible.
fn choose_params(target: u64) -> Option<BehrendParams> {
    if target <= 1 {
        return Some(BehrendParams {
            digits: 1,
            digit_bound: 1,
            radius: 0,
            sphere_size: 1,
        });
    }
    let mut best: Option<(u128, BehrendParams)> = None;
    for digits in (2..=MAX_DIGITS).rev() {
        let limit = best.map_or(VALUE_LIMIT, |(v, _)| v);
        let Some(mut hi) = max_digit_bound(digits, limit) else {
            continue;
        };
        if densest_sphere(digits, hi).1 < target {
            continue;
        }
        // the densest count is monotone in the digit bound
        let mut lo = 2;
        while lo < hi {
            let mid = (lo + hi) / 2;
            if densest_sphere(digits, mid).1 >= target {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        let (radius, sphere_size) = densest_sphere(digits, lo);
        let value = value_bound(digits, lo).expect("checked above");
        if best.is_none_or(|(v, _)| value < v) {
            best = Some((
                value,
                BehrendParams {
                    digits,
                    digit_bound: lo,
                    radius,
                    sphere_size,
                },
            ));
        }
    }
    best.map(|(_, p)| p)
}

/// Smallest `limit` numbers of the digit sphere, shifted by one so every
/// element is positive.
fn sphere_elements(p: BehrendParams, limit: usize) -> Vec<i64> {
    fn rec(p: &BehrendParams, pos: u32, rem: u64, value: i64, out: &mut Vec<i64>, limit: usize) {
        if out.len() >= limit {
            return;
        }
        if pos == 0 {
            if rem == 0 {
                out.push(value + 1);
            }
            return;
        }
        let sq = (p.digit_bound - 1) * (p.digit_bound - 1);
        let place = (p.base() as i64).pow(pos - 1);
        for x in 0..p.digit_bound {
            let x2 = x * x;
            if x2 > rem {
                break;
            }
            if rem - x2 > u64::from(pos - 1) * sq {
                continue;
            }
            rec(p, pos - 1, rem - x2, value + x as i64 * place, out, limit);
        }
    }
    let mut out = Vec::with_capacity(limit);
    rec(&p, p.digits, p.radius, 0, &mut out, limit);
    out
}

/// A 3-AP-free set of `size_target` positive integers from the digit-sphere
/// construction. Digits stay below half the base, so sums of two elements
/// never carry and `x + z = 2y` forces equal digit vectors on a sphere,
/// which strict convexity rules out.
pub fn behrend_construction(size_target: usize) -> Result<BehrendSet> {
    if size_target == 0 {
        return Err(Error::InvalidArgument("size target must be at least 1".into()));
    }
    let params = choose_params(size_target as u64).ok_or_else(|| {
        Error::InvalidArgument(format!("size target {size_target} exceeds the 62-bit value range"))
    })?;
    let set = IntegerSet::new(sphere_elements(params, size_target)).expect("increasing digit order");
    Ok(BehrendSet { params, set })
}

pub fn behrend_set(size_target: usize) -> Result<IntegerSet> {
    behrend_construction(size_target).map(|b| b.set)
}

/// Least `(x, y, z)` with `x < y < z` in `A` and `x + z = 2y`.
pub fn verify_no_3ap(a: &IntegerSet) -> Option<(i64, i64, i64)> {
    let e = a.elements();
    for (i, &x) in e.iter().enumerate() {
        for &y in &e[i + 1..] {
            let z = 2 * i128::from(y) - i128::from(x);
            if let Ok(z) = i64::try_from(z) {
                if a.contains(z) {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

/// `{(a, 0) : a in A}`.
pub fn collinear_point_set(a: &IntegerSet) -> PointSet {
    PointSet::new(a.elements().iter().map(|&x| Point(x, 0)).collect()).expect("distinct elements")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoscelesWitness {
    pub indices: [usize; 3],
    pub points: [Point; 3],
}

/// Least index triple `i < j < l` with two equal side lengths. Collinear
/// triples count, so `(0,0), (1,0), (2,0)` is a witness.
pub fn verify_isosceles_free(p: &PointSet) -> Option<IsoscelesWitness> {
    let pts = p.points();
    let n = pts.len();
    let dist: Vec<Vec<i128>> = pts
        .iter()
        .map(|&a| pts.iter().map(|&b| a.dist2(b)).collect())
        .collect();
    for i in 0..n {
        for j in i + 1..n {
            for l in j + 1..n {
                let (x, y, z) = (dist[i][j], dist[i][l], dist[j][l]);
                if x == y || x == z || y == z {
                    return Some(IsoscelesWitness {
                        indices: [i, j, l],
                        points: [pts[i], pts[j], pts[l]],
                    });
                }
            }
        }
    }
    None
}
