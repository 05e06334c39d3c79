//! Integer sets and planar point sets: difference and sum sets, additive
//! energy, the local properties on differences and distances, and the
//! reductions of both to colored complete graphs.
//!
//! All values are integers. Distances are compared as exact squared
//! integers, so two pairs span the same distance iff their squared
//! distances agree. Only strictly positive differences are counted: a
//! `k`-subset has at most `C(k,2)` of them.

use std::collections::HashMap;
use std::hash::Hash;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coloring::{ColoredCompleteGraph, LocalSpec, PropertyVerdict};
use crate::combin::{binomial, next_combination, pairs};
use crate::error::{Error, Result};

/// Finite set of integers, stored sorted and without duplicates.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct IntegerSet {
    elements: Vec<i64>,
}

impl IntegerSet {
    /// Accepts a strictly increasing sequence.
    pub fn new(elements: Vec<i64>) -> Result<Self> {
        if elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::NotStrictlyIncreasing);
        }
        Ok(IntegerSet { elements })
    }

    pub fn elements(&self) -> &[i64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: i64) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// `A + t`.
    pub fn translate(&self, t: i64) -> Self {
        IntegerSet {
            elements: self.elements.iter().map(|&a| a + t).collect(),
        }
    }

    /// `-A`.
    pub fn reflect(&self) -> Self {
        IntegerSet {
            elements: self.elements.iter().rev().map(|&a| -a).collect(),
        }
    }
}

impl FromIterator<i64> for IntegerSet {
    fn from_iter<I: IntoIterator<Item = i64>>(iter: I) -> Self {
        let mut elements: Vec<i64> = iter.into_iter().collect();
        elements.sort_unstable();
        elements.dedup();
        IntegerSet { elements }
    }
}

impl TryFrom<Vec<i64>> for IntegerSet {
    type Error = Error;

    fn try_from(v: Vec<i64>) -> Result<Self> {
        IntegerSet::new(v)
    }
}

impl From<IntegerSet> for Vec<i64> {
    fn from(s: IntegerSet) -> Self {
        s.elements
    }
}

/// Integer point in the plane, serialized as `[x, y]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Point(pub i64, pub i64);

impl Point {
    pub fn dist2(self, other: Point) -> i128 {
        let dx = i128::from(self.0) - i128::from(other.0);
        let dy = i128::from(self.1) - i128::from(other.1);
        dx * dx + dy * dy
    }
}

/// Pairwise distinct planar points, in input order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Point>", into = "Vec<Point>")]
pub struct PointSet {
    points: Vec<Point>,
}

impl PointSet {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        let mut sorted = points.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicatePoint(w[0].0, w[0].1));
        }
        Ok(PointSet { points })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

impl TryFrom<Vec<Point>> for PointSet {
    type Error = Error;

    fn try_from(v: Vec<Point>) -> Result<Self> {
        PointSet::new(v)
    }
}

impl From<PointSet> for Vec<Point> {
    fn from(s: PointSet) -> Self {
        s.points
    }
}

fn require_len(len: usize, need: usize) -> Result<()> {
    if len < need {
        Err(Error::SetTooSmall { need, got: len })
    } else {
        Ok(())
    }
}

/// Strictly positive differences `a - a'`.
pub fn difference_set(a: &IntegerSet) -> Result<IntegerSet> {
    require_len(a.len(), 2)?;
    let e = a.elements();
    Ok(e.iter()
        .enumerate()
        .flat_map(|(i, &x)| e[i + 1..].iter().map(move |&y| y - x))
        .collect())
}

/// All sums `a + a'`, repeats allowed.
pub fn sum_set(a: &IntegerSet) -> IntegerSet {
    let e = a.elements();
    e.iter()
        .enumerate()
        .flat_map(|(i, &x)| e[i..].iter().map(move |&y| x + y))
        .collect()
}

/// Additive energy: ordered quadruples `(a,b,c,d)` with `a+b = c+d`,
/// computed as `sum_s r(s)^2` with `r(s)` the number of ordered
/// representations of `s`.
pub fn additive_energy(a: &IntegerSet) -> Result<u128> {
    let mut reps: HashMap<i128, u64> = HashMap::new();
    for &x in a.elements() {
        for &y in a.elements() {
            *reps.entry(i128::from(x) + i128::from(y)).or_default() += 1;
        }
    }
    reps.values().try_fold(0u128, |acc, &r| {
        let r = u128::from(r);
        acc.checked_add(r * r).ok_or(Error::Overflow("additive energy"))
    })
}

/// Lexicographic scan over index `k`-subsets of `len` items counting the
/// distinct values of `key` over pairs. Returns the least subset with
/// fewer than `spec.ell` distinct keys.
fn scan_pair_keys<K: Hash + Eq>(
    len: usize,
    spec: LocalSpec,
    key: impl Fn(usize, usize) -> K,
) -> Option<(Vec<usize>, usize)> {
    fn rec<K: Hash + Eq>(
        len: usize,
        spec: LocalSpec,
        key: &dyn Fn(usize, usize) -> K,
        chosen: &mut Vec<usize>,
        counts: &mut HashMap<K, u32>,
        start: usize,
    ) -> Option<usize> {
        if counts.len() >= spec.ell {
            return None;
        }
        if chosen.len() == spec.k {
            return Some(counts.len());
        }
        for v in start..=len - (spec.k - chosen.len()) {
            for &u in chosen.iter() {
                *counts.entry(key(u, v)).or_default() += 1;
            }
            chosen.push(v);
            if let Some(found) = rec(len, spec, key, chosen, counts, v + 1) {
                return Some(found);
            }
            chosen.pop();
            for &u in chosen.iter() {
                let k = key(u, v);
                let c = counts.get_mut(&k).expect("key present");
                *c -= 1;
                if *c == 0 {
                    counts.remove(&k);
                }
            }
        }
        None
    }
    let mut chosen = Vec::with_capacity(spec.k);
    let mut counts = HashMap::new();
    rec(len, spec, &key, &mut chosen, &mut counts, 0).map(|d| (chosen, d))
}

fn check_spec(spec: LocalSpec, size: usize) -> Result<()> {
    spec.validate()?;
    if spec.k > size {
        return Err(Error::KExceedsSize { k: spec.k, size });
    }
    Ok(())
}

/// Every `k`-subset of `A` must have at least `ell` distinct positive
/// differences. The witness lists set elements.
pub fn verify_diff_local_property(a: &IntegerSet, spec: LocalSpec) -> Result<PropertyVerdict<i64>> {
    check_spec(spec, a.len())?;
    let e = a.elements();
    Ok(match scan_pair_keys(e.len(), spec, |i, j| (e[i] - e[j]).abs()) {
        Some((idx, d)) => PropertyVerdict::fails(idx.into_iter().map(|i| e[i]).collect(), d),
        None => PropertyVerdict::holds(),
    })
}

/// Every `k` points must determine at least `ell` distinct distances.
/// The witness lists point indices.
pub fn verify_distance_local_property(p: &PointSet, spec: LocalSpec) -> Result<PropertyVerdict> {
    check_spec(spec, p.len())?;
    let pts = p.points();
    Ok(match scan_pair_keys(pts.len(), spec, |i, j| pts[i].dist2(pts[j])) {
        Some((idx, d)) => PropertyVerdict::fails(idx, d),
        None => PropertyVerdict::holds(),
    })
}

/// Vertex `i` is the `i`-th smallest element; edge `(i, j)` is colored by
/// the difference `a_j - a_i`.
pub fn difference_color_graph(a: &IntegerSet) -> Result<ColoredCompleteGraph> {
    require_len(a.len(), 2)?;
    let e = a.elements();
    ColoredCompleteGraph::from_fn(e.len(), |i, j| e[j] - e[i])
}

/// Edge `(i, j)` is colored by the squared distance between points `i` and `j`.
pub fn distance_color_graph(p: &PointSet) -> Result<ColoredCompleteGraph> {
    require_len(p.len(), 2)?;
    let pts = p.points();
    ColoredCompleteGraph::from_fn(pts.len(), |i, j| pts[i].dist2(pts[j]))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferenceRepeat {
    pub difference: i64,
    /// Pairs `(a, a')` with `a - a' = difference`, by increasing `a'`.
    pub pairs: Vec<(i64, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepeatedDifferences {
    pub max_multiplicity: usize,
    pub witnesses: Vec<DifferenceRepeat>,
}

/// The largest number of times one positive difference is realized, with
/// every difference attaining it.
pub fn repeated_difference_bound_check(a: &IntegerSet) -> Result<RepeatedDifferences> {
    require_len(a.len(), 2)?;
    let e = a.elements();
    let mut by_diff: HashMap<i64, Vec<(i64, i64)>> = HashMap::new();
    for (i, &lo) in e.iter().enumerate() {
        for &hi in &e[i + 1..] {
            by_diff.entry(hi - lo).or_default().push((hi, lo));
        }
    }
    let max_multiplicity = by_diff.values().map(Vec::len).max().unwrap_or(0);
    let mut witnesses: Vec<DifferenceRepeat> = by_diff
        .into_iter()
        .filter(|(_, p)| p.len() == max_multiplicity)
        .map(|(difference, mut pairs)| {
            pairs.sort_by_key(|&(_, lo)| lo);
            DifferenceRepeat { difference, pairs }
        })
        .collect();
    witnesses.sort_by_key(|w| w.difference);
    Ok(RepeatedDifferences {
        max_multiplicity,
        witnesses,
    })
}

/// Exact minimum of `|A - A|` over `A ⊆ {1..M}`, `|A| = n`, with the local
/// difference property. Restricting to a finite range makes this an upper
/// bound on `g(n, k, ell)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GSearchResult {
    pub n: usize,
    pub spec: LocalSpec,
    pub range_cap: i64,
    pub value: usize,
    pub certificate: IntegerSet,
    pub difference_set: IntegerSet,
    pub candidates: u128,
    pub upper_bound_for_g: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum GSearchOutcome {
    Found(GSearchResult),
    Infeasible { range_cap: i64, candidates: u128 },
    BudgetExceeded { candidates: u128, budget: u128 },
}

/// Exhaustive search for the least difference-set size among `n`-subsets of
/// `{1..range_cap}` satisfying `spec`.
///
/// Candidates are normalized by translation (minimum element 1) and by
/// reflection `a -> max + 1 - a` (only the lexicographically smaller of a
/// set and its mirror is visited). Ties on the value are broken by the
/// lexicographically least certificate. `budget` caps the number of
/// normalized-by-translation candidates.
pub fn g_search(n: usize, spec: LocalSpec, range_cap: i64, budget: u128) -> Result<GSearchOutcome> {
    check_spec(spec, n)?;
    if range_cap < n as i64 {
        return Err(Error::InvalidArgument(format!(
            "range cap {range_cap} is smaller than the set size {n}"
        )));
    }
    let m = range_cap as u64;
    let candidates = binomial(m - 1, n as u64 - 1).ok_or(Error::Overflow("candidate count"))?;
    if candidates > budget {
        return Ok(GSearchOutcome::BudgetExceeded { candidates, budget });
    }

    // branch on the second element; each branch is scanned in lex order
    let best = (2..=range_cap - n as i64 + 2)
        .into_par_iter()
        .filter_map(|second| best_in_branch(n, spec, range_cap, second))
        .min();

    Ok(match best {
        Some((value, certificate)) => {
            let certificate = IntegerSet::new(certificate).expect("increasing");
            let difference_set = difference_set(&certificate)?;
            GSearchOutcome::Found(GSearchResult {
                n,
                spec,
                range_cap,
                value,
                certificate,
                difference_set,
                candidates,
                upper_bound_for_g: true,
            })
        }
        None => GSearchOutcome::Infeasible {
            range_cap,
            candidates,
        },
    })
}

fn best_in_branch(n: usize, spec: LocalSpec, range_cap: i64, second: i64) -> Option<(usize, Vec<i64>)> {
    let rest = n - 2;
    let pool = (range_cap - second) as usize; // values second+1..=range_cap
    if rest > pool {
        return None;
    }
    let mut idx: Vec<usize> = (0..rest).collect();
    let mut set = vec![0i64; n];
    let mut seen = vec![false; range_cap as usize];
    let mut best: Option<(usize, Vec<i64>)> = None;
    loop {
        set[0] = 1;
        set[1] = second;
        for (t, &i) in idx.iter().enumerate() {
            set[t + 2] = second + 1 + i as i64;
        }
        if is_reflection_canonical(&set) {
            let value = count_differences(&set, &mut seen);
            if best.as_ref().is_none_or(|(b, _)| value < *b) {
                let a = IntegerSet {
                    elements: set.clone(),
                };
                if verify_diff_local_property(&a, spec).expect("valid spec").holds {
                    best = Some((value, set.clone()));
                }
            }
        }
        if !next_combination(&mut idx, pool) {
            break;
        }
    }
    best
}

fn is_reflection_canonical(set: &[i64]) -> bool {
    let top = set[set.len() - 1] + 1;
    let mirrored = set.iter().rev().map(|&a| top - a);
    set.iter().copied().le(mirrored)
}

fn count_differences(set: &[i64], seen: &mut [bool]) -> usize {
    let mut count = 0;
    for (i, &x) in set.iter().enumerate() {
        for &y in &set[i + 1..] {
            let d = (y - x) as usize;
            if !std::mem::replace(&mut seen[d], true) {
                count += 1;
            }
        }
    }
    for (i, &x) in set.iter().enumerate() {
        for &y in &set[i + 1..] {
            seen[(y - x) as usize] = false;
        }
    }
    count
}

/// Lower bound `C(n,2) - n + 2` attributed to Erdős and Sós for the
/// `(4, 5)` difference property.
pub fn erdos_sos_bound(n: usize) -> usize {
    (pairs(n) + 2).saturating_sub(n)
}
