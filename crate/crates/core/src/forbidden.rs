//! Configurations that a coloring with the `(a(b+1), C(a(b+1),2) - ba + b + 1)`
//! local property cannot contain, and the set-intersection counting lemma
//! behind the popular-color bound.
//!
//! Two configurations are detected:
//!
//! * a vertex with at least `ba - b + 1` incident edges of one color;
//! * `b` colors, each used at least `2^j >= a` times, whose endpoint sets
//!   share at least `a` vertices.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::coloring::{Color, ColoredCompleteGraph, LocalSpec, Vertex};
use crate::combin::{binomial, pairs, VertexSet};
use crate::error::{Error, Result};

/// Theorem parameters `k > m >= 2`, with `b = m` and `a = floor(k/(m+1))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ThmParams {
    k: usize,
    m: usize,
}

impl ThmParams {
    pub fn new(k: usize, m: usize) -> Result<Self> {
        if m < 2 || k <= m {
            return Err(Error::InvalidParams { k, m });
        }
        Ok(ThmParams { k, m })
    }

    /// Parameters with `k = a(b+1)` and `m = b`.
    pub fn from_ab(a: usize, b: usize) -> Result<Self> {
        Self::new(a * (b + 1), b)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn a(&self) -> usize {
        self.k / (self.m + 1)
    }

    pub fn b(&self) -> usize {
        self.m
    }

    /// `a(b+1)`, equal to `k` when `(m+1) | k`.
    pub fn subset_size(&self) -> usize {
        self.a() * (self.b() + 1)
    }

    /// `C(a(b+1), 2) - ba + b + 1`. Exceeds `C(a(b+1), 2)` when `a = 1`.
    pub fn ell(&self) -> usize {
        let (a, b) = (self.a(), self.b());
        pairs(self.subset_size()) + b + 1 - b * a
    }

    /// The local property `(a(b+1), C(a(b+1),2) - ba + b + 1)`.
    pub fn local_spec(&self) -> Result<LocalSpec> {
        LocalSpec::new(self.subset_size(), self.ell())
    }

    /// The theorem's property on the original `k`:
    /// `(k, C(k,2) - m*floor(k/(m+1)) + m + 1)`.
    pub fn theorem_spec(&self) -> Result<LocalSpec> {
        LocalSpec::new(self.k, pairs(self.k) + self.m + 1 - self.m * self.a())
    }

    /// Largest allowed monochromatic degree, `ba - b`.
    pub fn max_mono_degree(&self) -> usize {
        self.b() * self.a() - self.b()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoStar {
    pub vertex: Vertex,
    pub color: Color,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoDegree {
    pub max: usize,
    /// Every `(vertex, color)` attaining the maximum, by vertex then color.
    pub attained: Vec<MonoStar>,
}

fn for_each_mono_degree(g: &ColoredCompleteGraph, mut f: impl FnMut(MonoStar)) {
    let n = g.n();
    let mut counts = vec![0usize; g.num_colors()];
    for v in 0..n {
        counts.iter_mut().for_each(|c| *c = 0);
        for u in (0..n).filter(|&u| u != v) {
            counts[g.color(u, v) as usize] += 1;
        }
        for (color, &count) in counts.iter().enumerate() {
            if count > 0 {
                f(MonoStar {
                    vertex: v,
                    color: color as Color,
                    count,
                });
            }
        }
    }
}

/// Largest number of same-colored edges at a single vertex.
pub fn max_mono_degree(g: &ColoredCompleteGraph) -> MonoDegree {
    let mut best = MonoDegree {
        max: 0,
        attained: Vec::new(),
    };
    for_each_mono_degree(g, |star| {
        if star.count > best.max {
            best.max = star.count;
            best.attained.clear();
        }
        if star.count == best.max {
            best.attained.push(star);
        }
    });
    best
}

/// All `(vertex, color)` with at least `ba - b + 1` edges of that color at
/// the vertex.
pub fn mono_degree_violations(g: &ColoredCompleteGraph, p: ThmParams) -> Vec<MonoStar> {
    let limit = p.max_mono_degree();
    let mut out = Vec::new();
    for_each_mono_degree(g, |star| {
        if star.count > limit {
            out.push(star);
        }
    });
    out
}

/// A `k`-subset built around a violating star: the vertex, `ba - b + 1` of
/// its same-colored neighbours, and the smallest remaining vertices. It
/// spans at most `C(k,2) - ba + b` colors.
pub fn mono_star_subset(g: &ColoredCompleteGraph, p: ThmParams, star: MonoStar) -> Option<Vec<Vertex>> {
    let size = p.subset_size();
    if g.n() < size || star.count <= p.max_mono_degree() {
        return None;
    }
    let mut members = VertexSet::new(g.n());
    members.insert(star.vertex);
    let neighbours = (0..g.n())
        .filter(|&u| u != star.vertex && g.color(u, star.vertex) == star.color)
        .take(p.max_mono_degree() + 1);
    neighbours.for_each(|u| members.insert(u));
    for v in 0..g.n() {
        if members.len() == size {
            break;
        }
        members.insert(v);
    }
    Some(members.iter().collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorSupport {
    pub color: Color,
    pub vertices: Vec<Vertex>,
}

fn support_sets(g: &ColoredCompleteGraph) -> Vec<VertexSet> {
    let mut sets = vec![VertexSet::new(g.n()); g.num_colors()];
    for (i, j, c) in g.edges() {
        sets[c as usize].insert(i);
        sets[c as usize].insert(j);
    }
    sets
}

/// Endpoint set `V_c` of every color, by color id.
pub fn color_supports(g: &ColoredCompleteGraph) -> Vec<ColorSupport> {
    support_sets(g)
        .into_iter()
        .enumerate()
        .map(|(c, s)| ColorSupport {
            color: c as Color,
            vertices: s.iter().collect(),
        })
        .collect()
}

/// Colors used at least `2^j` times (the cumulative class `C_j`), by id.
pub fn popular_colors(g: &ColoredCompleteGraph, j: u32) -> Vec<Color> {
    let Some(floor) = 1u64.checked_shl(j) else {
        return Vec::new();
    };
    g.color_histogram()
        .multiplicities
        .iter()
        .enumerate()
        .filter(|(_, &m)| m >= floor)
        .map(|(c, _)| c as Color)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum PopularSearch {
    Found { colors: Vec<Color>, common: Vec<Vertex> },
    None { tuples: u128 },
    BudgetExceeded { tuples: u128, budget: u128 },
}

impl PopularSearch {
    pub fn is_found(&self) -> bool {
        matches!(self, PopularSearch::Found { .. })
    }
}

/// Searches `b`-tuples of colors from `C_j` for endpoint sets sharing at
/// least `a` vertices; returns the lexicographically least such tuple.
///
/// The number of tuples `C(|C_j|, b)` is compared with `budget` before
/// searching.
pub fn popular_intersection_search(
    g: &ColoredCompleteGraph,
    j: u32,
    p: ThmParams,
    budget: u128,
) -> PopularSearch {
    let class = popular_colors(g, j);
    let (a, b) = (p.a(), p.b());
    let tuples = binomial(class.len() as u64, b as u64).unwrap_or(u128::MAX);
    if tuples > budget {
        return PopularSearch::BudgetExceeded { tuples, budget };
    }
    let supports = support_sets(g);
    // supports smaller than a can never reach the target
    let usable: Vec<Color> = class
        .into_iter()
        .filter(|&c| supports[c as usize].len() >= a)
        .collect();

    let mut chosen = Vec::with_capacity(b);
    let full = VertexSet::full(g.n());
    match intersect_search(&supports, &usable, 0, b, a, &full, &mut chosen) {
        Some(common) => PopularSearch::Found {
            colors: chosen,
            common: common.iter().collect(),
        },
        None => PopularSearch::None { tuples },
    }
}

fn intersect_search(
    supports: &[VertexSet],
    usable: &[Color],
    start: usize,
    b: usize,
    a: usize,
    acc: &VertexSet,
    chosen: &mut Vec<Color>,
) -> Option<VertexSet> {
    if chosen.len() == b {
        return Some(acc.clone());
    }
    let need = b - chosen.len();
    for i in start..usable.len().saturating_sub(need - 1) {
        let c = usable[i];
        let mut next = acc.clone();
        if next.intersect_with(&supports[c as usize]) < a {
            continue;
        }
        chosen.push(c);
        if let Some(found) = intersect_search(supports, usable, i + 1, b, a, &next, chosen) {
            return Some(found);
        }
        chosen.pop();
    }
    None
}

/// Subsets `A_1..A_k` of a universe `{0..n-1}` and an intersection arity `d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetSystemInstance {
    pub n: usize,
    pub sets: Vec<Vec<usize>>,
    pub d: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaHit {
    /// Zero-based positions of the chosen subsets, increasing.
    pub indices: Vec<usize>,
    pub intersection: usize,
}

impl SetSystemInstance {
    pub fn validate(&self) -> Result<()> {
        if self.d < 2 {
            return Err(Error::InvalidSetSystem(format!("d = {} must be at least 2", self.d)));
        }
        for (i, s) in self.sets.iter().enumerate() {
            if s.is_empty() {
                return Err(Error::InvalidSetSystem(format!("subset {i} is empty")));
            }
            if let Some(&x) = s.iter().find(|&&x| x >= self.n) {
                return Err(Error::InvalidSetSystem(format!(
                    "subset {i} has element {x} outside 0..{}",
                    self.n
                )));
            }
        }
        Ok(())
    }

    fn bitsets(&self) -> Vec<VertexSet> {
        self.sets
            .iter()
            .map(|s| {
                let mut b = VertexSet::new(self.n);
                s.iter().for_each(|&x| b.insert(x));
                b
            })
            .collect()
    }

    /// Smallest subset size `m`.
    pub fn min_size(&self) -> usize {
        self.bitsets().iter().map(VertexSet::len).min().unwrap_or(0)
    }

    /// `k >= 2d n^d / m^d`, compared as `k m^d >= 2d n^d`.
    pub fn hypothesis_holds(&self) -> bool {
        let m = BigUint::from(self.min_size());
        let n = BigUint::from(self.n);
        let d = self.d as u32;
        BigUint::from(self.sets.len()) * m.pow(d) >= BigUint::from(2 * self.d) * n.pow(d)
    }

    /// Least integer `t` with `t >= m^d / (2 n^(d-1))`.
    pub fn threshold(&self) -> BigUint {
        let m = BigUint::from(self.min_size());
        let d = self.d as u32;
        let den = BigUint::from(2u32) * BigUint::from(self.n).pow(d - 1);
        if den == BigUint::ZERO {
            return BigUint::ZERO;
        }
        (m.pow(d) + &den - 1u32) / den
    }
}

/// Least `d`-tuple of subsets (lexicographic in position) whose common
/// intersection has at least `m^d / (2 n^(d-1))` elements, `m` being the
/// smallest subset size. Guaranteed to exist when
/// [`SetSystemInstance::hypothesis_holds`].
pub fn counting_lemma_find(inst: &SetSystemInstance) -> Result<Option<LemmaHit>> {
    inst.validate()?;
    if inst.sets.len() < inst.d {
        return Ok(None);
    }
    let threshold = match inst.threshold().to_usize() {
        Some(t) if t <= inst.n => t,
        _ => return Ok(None),
    };
    let sets = inst.bitsets();
    let mut chosen = Vec::with_capacity(inst.d);
    let full = VertexSet::full(inst.n);
    Ok(
        tuple_search(&sets, 0, inst.d, threshold, &full, &mut chosen).map(|common| LemmaHit {
            indices: chosen,
            intersection: common.len(),
        }),
    )
}

fn tuple_search(
    sets: &[VertexSet],
    start: usize,
    d: usize,
    threshold: usize,
    acc: &VertexSet,
    chosen: &mut Vec<usize>,
) -> Option<VertexSet> {
    if chosen.len() == d {
        return Some(acc.clone());
    }
    let need = d - chosen.len();
    for i in start..=sets.len() - need {
        let mut next = acc.clone();
        if next.intersect_with(&sets[i]) < threshold {
            continue;
        }
        chosen.push(i);
        if let Some(found) = tuple_search(sets, i + 1, d, threshold, &next, chosen) {
            return Some(found);
        }
        chosen.pop();
    }
    None
}
