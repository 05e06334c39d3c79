//! Edge-colored complete graphs and the local property.
//!
//! A coloring of `K_n` stores one color id per unordered edge `(i, j)`,
//! `i < j`, in row-major upper-triangle order: edge `(i, j)` lives at index
//! `i*n - i(i+1)/2 + j - i - 1`. This layout is shared by every file format
//! and module in the crate.
//!
//! Color ids are always dense (`0..num_colors`). Constructors accept any
//! ordered labels and replace each label by its rank among the distinct
//! labels, so an already dense coloring is left untouched.

use serde::{Deserialize, Serialize};

use crate::combin::pairs;
use crate::error::{Error, Result};

pub type Vertex = usize;
pub type Color = u32;

/// Index of the unordered edge `{i, j}` in the upper-triangle layout.
#[inline]
pub fn edge_index(n: usize, i: Vertex, j: Vertex) -> usize {
    debug_assert!(i != j && i < n && j < n);
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    i * n - i * (i + 1) / 2 + j - i - 1
}

/// The pair `(k, ell)`: every `k`-subset must span at least `ell` colors
/// (or distances, or positive differences).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LocalSpec {
    pub k: usize,
    pub ell: usize,
}

impl LocalSpec {
    pub fn new(k: usize, ell: usize) -> Result<Self> {
        let spec = LocalSpec { k, ell };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let reason = if self.k < 2 {
            "k must be at least 2"
        } else if self.ell < 1 {
            "ell must be at least 1"
        } else if self.ell > pairs(self.k) {
            "ell exceeds the k(k-1)/2 pairs of a k-subset"
        } else {
            return Ok(());
        };
        Err(Error::InvalidSpec {
            k: self.k,
            ell: self.ell,
            reason,
        })
    }

    /// Number of pairs inside a `k`-subset.
    pub fn pairs(&self) -> usize {
        pairs(self.k)
    }
}

/// A failing subset together with its distinct count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness<T> {
    pub subset: Vec<T>,
    pub distinct: usize,
}

/// Outcome of a local-property check. When the property fails, `witness`
/// carries the lexicographically least failing subset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyVerdict<T = Vertex> {
    pub holds: bool,
    pub witness: Option<Witness<T>>,
}

impl<T> PropertyVerdict<T> {
    pub fn holds() -> Self {
        PropertyVerdict {
            holds: true,
            witness: None,
        }
    }

    pub fn fails(subset: Vec<T>, distinct: usize) -> Self {
        PropertyVerdict {
            holds: false,
            witness: Some(Witness { subset, distinct }),
        }
    }

    /// Maps witness elements, e.g. vertex indices back to set elements.
    pub fn map<U>(self, f: impl FnMut(T) -> U) -> PropertyVerdict<U> {
        PropertyVerdict {
            holds: self.holds,
            witness: self.witness.map(|w| Witness {
                subset: w.subset.into_iter().map(f).collect(),
                distinct: w.distinct,
            }),
        }
    }
}

/// Color multiplicities `m_c`, indexed by dense color id.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorHistogram {
    pub multiplicities: Vec<u64>,
}

impl ColorHistogram {
    pub fn num_colors(&self) -> usize {
        self.multiplicities.len()
    }

    /// Sum of all multiplicities; equals the number of edges.
    pub fn total(&self) -> u64 {
        self.multiplicities.iter().sum()
    }

    /// Multiplicities sorted in decreasing order (label-free view).
    pub fn sorted_multiset(&self) -> Vec<u64> {
        let mut m = self.multiplicities.clone();
        m.sort_unstable_by(|a, b| b.cmp(a));
        m
    }

    /// `sum m_c^2` with overflow detection.
    pub fn energy(&self) -> Result<u128> {
        self.multiplicities.iter().try_fold(0u128, |acc, &m| {
            let m = u128::from(m);
            m.checked_mul(m)
                .and_then(|sq| acc.checked_add(sq))
                .ok_or(Error::Overflow("color energy"))
        })
    }
}

/// On-disk form `{"n": int, "colors": [int; n(n-1)/2]}`. Any integer
/// labels are accepted on load and densified by rank.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringFile {
    pub n: usize,
    pub colors: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ColoringFile", into = "ColoringFile")]
pub struct ColoredCompleteGraph {
    n: usize,
    colors: Vec<Color>,
    num_colors: usize,
}

impl ColoredCompleteGraph {
    /// Builds a coloring from arbitrary ordered edge labels, densifying them
    /// by rank.
    pub fn from_labels<T: Ord + Clone>(n: usize, labels: &[T]) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let expected = pairs(n);
        if labels.len() != expected {
            return Err(Error::EdgeCountMismatch {
                n,
                expected,
                got: labels.len(),
            });
        }
        let mut distinct: Vec<T> = labels.to_vec();
        distinct.sort();
        distinct.dedup();
        let colors = labels
            .iter()
            .map(|l| distinct.binary_search(l).expect("label present") as Color)
            .collect();
        Ok(ColoredCompleteGraph {
            n,
            colors,
            num_colors: distinct.len(),
        })
    }

    pub fn new(n: usize, colors: Vec<Color>) -> Result<Self> {
        Self::from_labels(n, &colors)
    }

    /// Colors each edge `(i, j)`, `i < j`, by `f(i, j)`.
    pub fn from_fn<T: Ord + Clone>(n: usize, mut f: impl FnMut(Vertex, Vertex) -> T) -> Result<Self> {
        let mut labels = Vec::with_capacity(pairs(n));
        for i in 0..n {
            for j in i + 1..n {
                labels.push(f(i, j));
            }
        }
        Self::from_labels(n, &labels)
    }

    pub fn monochromatic(n: usize) -> Result<Self> {
        Self::from_fn(n, |_, _| 0u32)
    }

    pub fn rainbow(n: usize) -> Result<Self> {
        let mut next = 0u32;
        Self::from_fn(n, |_, _| {
            next += 1;
            next
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_colors(&self) -> usize {
        self.num_colors
    }

    pub fn num_edges(&self) -> usize {
        self.colors.len()
    }

    /// Edge colors in upper-triangle order.
    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    #[inline]
    pub fn color(&self, i: Vertex, j: Vertex) -> Color {
        self.colors[edge_index(self.n, i, j)]
    }

    /// Iterates `(i, j, color)` over all edges in upper-triangle order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex, Color)> + '_ {
        let n = self.n;
        (0..n)
            .flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
            .zip(self.colors.iter().copied())
            .map(|((i, j), c)| (i, j, c))
    }

    /// Number of distinct colors among the edges induced by `subset`.
    pub fn subset_color_count(&self, subset: &[Vertex]) -> Result<usize> {
        if subset.len() < 2 {
            return Err(Error::SubsetTooSmall(subset.len()));
        }
        let mut seen = vec![false; self.n];
        for &v in subset {
            if v >= self.n {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::RepeatedVertex(v));
            }
        }
        let mut used = vec![false; self.num_colors];
        let mut distinct = 0;
        for (a, &u) in subset.iter().enumerate() {
            for &v in &subset[a + 1..] {
                let c = self.color(u, v) as usize;
                if !std::mem::replace(&mut used[c], true) {
                    distinct += 1;
                }
            }
        }
        Ok(distinct)
    }

    /// Checks that every `k`-subset of vertices spans at least `ell` colors.
    ///
    /// Subsets are visited in lexicographic order, so a failing verdict
    /// carries the least failing subset. A partial subset that already
    /// spans `ell` colors is not extended, since colors only accumulate.
    pub fn verify_local_property(&self, spec: LocalSpec) -> Result<PropertyVerdict> {
        spec.validate()?;
        if spec.k > self.n {
            return Err(Error::KExceedsSize {
                k: spec.k,
                size: self.n,
            });
        }
        let mut scan = SubsetScan {
            graph: self,
            spec,
            chosen: Vec::with_capacity(spec.k),
            counts: vec![0; self.num_colors],
            distinct: 0,
        };
        Ok(match scan.search(0) {
            Some(distinct) => PropertyVerdict::fails(scan.chosen, distinct),
            None => PropertyVerdict::holds(),
        })
    }

    pub fn color_histogram(&self) -> ColorHistogram {
        let mut multiplicities = vec![0u64; self.num_colors];
        for &c in &self.colors {
            multiplicities[c as usize] += 1;
        }
        ColorHistogram { multiplicities }
    }

    /// Color energy `sum_c m_c^2`: the number of ordered pairs of
    /// same-colored unordered edges, the diagonal included.
    pub fn color_energy(&self) -> Result<u128> {
        self.color_histogram().energy()
    }

    /// `ceil(C(n,2)^2 / num_colors)`, a lower bound on [`Self::color_energy`].
    /// A single vertex has no edges and the bound is 0.
    pub fn cauchy_schwarz_floor(&self) -> u128 {
        if self.num_colors == 0 {
            return 0;
        }
        let e = self.colors.len() as u128;
        (e * e).div_ceil(self.num_colors as u128)
    }

    /// Recolors every edge `c -> perm[c]`. `perm` must be a bijection on
    /// `0..num_colors`.
    pub fn relabel_colors(&self, perm: &[Color]) -> Result<Self> {
        check_permutation(perm, self.num_colors).ok_or(Error::NotABijection(self.num_colors))?;
        Ok(ColoredCompleteGraph {
            n: self.n,
            colors: self.colors.iter().map(|&c| perm[c as usize]).collect(),
            num_colors: self.num_colors,
        })
    }

    /// Moves vertex `v` to `perm[v]`.
    pub fn permute_vertices(&self, perm: &[Vertex]) -> Result<Self> {
        check_permutation(perm, self.n).ok_or(Error::NotAPermutation(self.n))?;
        let mut colors = vec![0; self.colors.len()];
        for (i, j, c) in self.edges() {
            colors[edge_index(self.n, perm[i], perm[j])] = c;
        }
        Ok(ColoredCompleteGraph {
            n: self.n,
            colors,
            num_colors: self.num_colors,
        })
    }
}

impl TryFrom<ColoringFile> for ColoredCompleteGraph {
    type Error = Error;

    fn try_from(f: ColoringFile) -> Result<Self> {
        Self::from_labels(f.n, &f.colors)
    }
}

impl From<ColoredCompleteGraph> for ColoringFile {
    fn from(g: ColoredCompleteGraph) -> Self {
        ColoringFile {
            n: g.n,
            colors: g.colors.into_iter().map(i64::from).collect(),
        }
    }
}

fn check_permutation<T: Copy + TryInto<usize>>(perm: &[T], len: usize) -> Option<()> {
    if perm.len() != len {
        return None;
    }
    let mut hit = vec![false; len];
    for &p in perm {
        let p: usize = p.try_into().ok()?;
        if p >= len || std::mem::replace(&mut hit[p], true) {
            return None;
        }
    }
    Some(())
}

struct SubsetScan<'g> {
    graph: &'g ColoredCompleteGraph,
    spec: LocalSpec,
    chosen: Vec<Vertex>,
    counts: Vec<u32>,
    distinct: usize,
}

impl SubsetScan<'_> {
    /// Extends `chosen` with vertices from `start..`; returns the distinct
    /// count of the first failing completion, leaving it in `chosen`.
    fn search(&mut self, start: Vertex) -> Option<usize> {
        if self.distinct >= self.spec.ell {
            return None;
        }
        if self.chosen.len() == self.spec.k {
            return Some(self.distinct);
        }
        let need = self.spec.k - self.chosen.len();
        for v in start..=self.graph.n - need {
            self.push(v);
            if let Some(found) = self.search(v + 1) {
                return Some(found);
            }
            self.pop();
        }
        None
    }

    fn push(&mut self, v: Vertex) {
        for &u in &self.chosen {
            let c = self.graph.color(u, v) as usize;
            self.counts[c] += 1;
            if self.counts[c] == 1 {
                self.distinct += 1;
            }
        }
        self.chosen.push(v);
    }

    fn pop(&mut self) {
        let v = self.chosen.pop().expect("non-empty");
        for &u in &self.chosen {
            let c = self.graph.color(u, v) as usize;
            self.counts[c] -= 1;
            if self.counts[c] == 0 {
                self.distinct -= 1;
            }
        }
    }
}
