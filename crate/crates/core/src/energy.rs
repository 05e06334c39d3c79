//! Dyadic view of the color multiplicities and the per-scale bounds used
//! to control the color energy.
//!
//! Two counts appear per scale `j`:
//!
//! * `bin_count[j]`: colors with `2^j <= m_c < 2^(j+1)` (the energy sum);
//! * `cum_count[j]`: colors with `m_c >= 2^j`, the class `C_j` (the
//!   intersection argument). Its size is `k_j`.
//!
//! Reports always label which of the two is meant.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::coloring::{ColorHistogram, ColoredCompleteGraph};
use crate::error::{Error, Result};
use crate::forbidden::{mono_degree_violations, popular_intersection_search, MonoStar, PopularSearch, ThmParams};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DyadicProfile {
    pub n: usize,
    pub params: ThmParams,
    pub bin_count: Vec<u64>,
    pub cum_count: Vec<u64>,
    /// `floor(log2(b (2 a^(b+1) n^(b-1))^(1/b)))`.
    pub t: u32,
}

impl DyadicProfile {
    pub fn num_colors(&self) -> u64 {
        self.bin_count.iter().sum()
    }

    /// `k_j`, zero past the largest occupied scale.
    pub fn k_j(&self, j: usize) -> u64 {
        self.cum_count.get(j).copied().unwrap_or(0)
    }

    /// `k_j * 2^j <= C(n,2)` at every scale: at least `2^j` edges per color
    /// in `C_j`, and only `C(n,2)` edges in total.
    pub fn within_edge_count(&self) -> bool {
        let edges = BigUint::from(self.n * self.n.saturating_sub(1) / 2);
        self.cum_count
            .iter()
            .enumerate()
            .all(|(j, &k)| BigUint::from(k) << j <= edges)
    }
}

fn pow(x: usize, e: usize) -> BigUint {
    BigUint::from(x).pow(e as u32)
}

/// Largest `j` with `2^(jb) <= 2 b^b a^(b+1) n^(b-1)`.
pub fn crossover_index(n: usize, p: ThmParams) -> u32 {
    let (a, b) = (p.a(), p.b());
    let rhs = BigUint::from(2u32) * pow(b, b) * pow(a, b + 1) * pow(n, b - 1);
    // rhs >= 2, so j = 0 always qualifies
    let mut j = 0u32;
    while BigUint::from(1u32) << ((j as usize + 1) * b) <= rhs {
        j += 1;
    }
    j
}

/// Scale of the largest multiplicity, `floor(log2 m)`.
fn scale(m: u64) -> usize {
    debug_assert!(m > 0);
    (63 - m.leading_zeros()) as usize
}

pub fn dyadic_profile(g: &ColoredCompleteGraph, p: ThmParams) -> DyadicProfile {
    profile_from_histogram(g.n(), &g.color_histogram(), p)
}

/// Profile of an arbitrary multiplicity list on `n` vertices.
pub fn profile_from_histogram(n: usize, hist: &ColorHistogram, p: ThmParams) -> DyadicProfile {
    let top = hist.multiplicities.iter().copied().max().map_or(0, |m| scale(m) + 1);
    let mut bin_count = vec![0u64; top];
    for &m in &hist.multiplicities {
        bin_count[scale(m)] += 1;
    }
    let mut cum_count = bin_count.clone();
    for j in (0..top.saturating_sub(1)).rev() {
        cum_count[j] += cum_count[j + 1];
    }
    DyadicProfile {
        n,
        params: p,
        bin_count,
        cum_count,
        t: crossover_index(n, p),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// `j <= t`: compared with `n^2 / 2^j`.
    Poor,
    /// `j > t`: compared with `2 n^b b^(b+1) a^b / 2^(jb)`.
    Rich,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundRow {
    pub j: usize,
    pub bin_count: u64,
    /// Cumulative `k_j = |C_j|`.
    pub k_j: u64,
    pub poor_bound_num: String,
    pub poor_bound_den: String,
    pub rich_bound_num: String,
    pub rich_bound_den: String,
    pub regime: Regime,
    /// `k_j` strictly below the bound of its regime.
    pub within_bound: bool,
    /// `2^j` within a factor two of `n^((b-1)/b)`, where the poor bound is
    /// the weak link.
    pub near_crossover_gap: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ForbiddenEvidence {
    MonoStar(MonoStar),
    PopularIntersection { j: usize, search: PopularSearch },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: usize,
    pub params: ThmParams,
    pub t: u32,
    pub rows: Vec<BoundRow>,
    /// Some rich-regime row is over its bound. The rich bound only binds
    /// colorings with the local property, so this points at a forbidden
    /// configuration rather than at an error.
    pub rich_bound_violated: bool,
    pub forbidden_evidence: Option<ForbiddenEvidence>,
}

/// Colorings up to this many vertices get a forbidden-configuration search
/// when a rich bound fails.
pub const EVIDENCE_MAX_N: usize = 64;
const EVIDENCE_TUPLE_BUDGET: u128 = 1_000_000;

pub fn bound_report(g: &ColoredCompleteGraph, p: ThmParams) -> BoundReport {
    let profile = dyadic_profile(g, p);
    let n = g.n();
    let (a, b) = (p.a(), p.b());
    let n2 = pow(n, 2);
    let rich_num = BigUint::from(2u32) * pow(n, b) * pow(b, b + 1) * pow(a, b);
    let gap_target = pow(n, b - 1);

    let mut rows = Vec::with_capacity(profile.cum_count.len());
    let mut first_rich_violation = None;
    for (j, (&bin, &k)) in profile.bin_count.iter().zip(&profile.cum_count).enumerate() {
        let poor_den = BigUint::from(1u32) << j;
        let rich_den = BigUint::from(1u32) << (j * b);
        let regime = if j as u32 <= profile.t { Regime::Poor } else { Regime::Rich };
        let kj = BigUint::from(k);
        let within_bound = match regime {
            Regime::Poor => &kj * &poor_den < n2,
            Regime::Rich => &kj * &rich_den < rich_num,
        };
        if regime == Regime::Rich && !within_bound && first_rich_violation.is_none() {
            first_rich_violation = Some(j);
        }
        // 2^((j-1)b) <= n^(b-1) < 2^((j+1)b)
        let lower = if j == 0 {
            BigUint::ZERO
        } else {
            BigUint::from(1u32) << ((j - 1) * b)
        };
        let near_crossover_gap = lower <= gap_target && gap_target < BigUint::from(1u32) << ((j + 1) * b);
        rows.push(BoundRow {
            j,
            bin_count: bin,
            k_j: k,
            poor_bound_num: n2.to_string(),
            poor_bound_den: poor_den.to_string(),
            rich_bound_num: rich_num.to_string(),
            rich_bound_den: rich_den.to_string(),
            regime,
            within_bound,
            near_crossover_gap,
        });
    }

    let forbidden_evidence = match first_rich_violation {
        Some(j) if n <= EVIDENCE_MAX_N => find_evidence(g, p, j),
        _ => None,
    };
    BoundReport {
        n,
        params: p,
        t: profile.t,
        rows,
        rich_bound_violated: first_rich_violation.is_some(),
        forbidden_evidence,
    }
}

fn find_evidence(g: &ColoredCompleteGraph, p: ThmParams, j: usize) -> Option<ForbiddenEvidence> {
    if let Some(&star) = mono_degree_violations(g, p).first() {
        return Some(ForbiddenEvidence::MonoStar(star));
    }
    let search = popular_intersection_search(g, j as u32, p, EVIDENCE_TUPLE_BUDGET);
    match search {
        PopularSearch::None { .. } => None,
        _ => Some(ForbiddenEvidence::PopularIntersection { j, search }),
    }
}

impl BoundReport {
    /// CSV with one row per scale.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "j,bin_count,k_j,poor_bound_num,poor_bound_den,rich_bound_num,rich_bound_den,flags\n",
        );
        for r in &self.rows {
            let mut flags = vec![match r.regime {
                Regime::Poor => "poor",
                Regime::Rich => "rich",
            }];
            flags.push(if r.within_bound { "within" } else { "exceeded" });
            if r.regime == Regime::Rich && !r.within_bound {
                flags.push("forbidden-configuration-implied");
            }
            if r.near_crossover_gap {
                flags.push("near-crossover-gap");
            }
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                r.j,
                r.bin_count,
                r.k_j,
                r.poor_bound_num,
                r.poor_bound_den,
                r.rich_bound_num,
                r.rich_bound_den,
                flags.join(";")
            ));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnergyDecomposition {
    /// `sum m_c^2` over colors in bin `j`.
    pub per_bin: Vec<u128>,
    pub total: u128,
}

pub fn energy_decomposition(g: &ColoredCompleteGraph) -> Result<EnergyDecomposition> {
    decompose_histogram(&g.color_histogram())
}

pub fn decompose_histogram(hist: &ColorHistogram) -> Result<EnergyDecomposition> {
    let top = hist.multiplicities.iter().copied().max().map_or(0, |m| scale(m) + 1);
    let mut per_bin = vec![0u128; top];
    let overflow = || Error::Overflow("color energy");
    for &m in &hist.multiplicities {
        let m = u128::from(m);
        let sq = m.checked_mul(m).ok_or_else(overflow)?;
        let slot = &mut per_bin[scale(m as u64)];
        *slot = slot.checked_add(sq).ok_or_else(overflow)?;
    }
    let total = per_bin
        .iter()
        .try_fold(0u128, |acc, &x| acc.checked_add(x))
        .ok_or_else(overflow)?;
    Ok(EnergyDecomposition { per_bin, total })
}
