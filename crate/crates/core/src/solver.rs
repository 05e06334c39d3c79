//! Exact least number of colors of `K_n` with a local property, by
//! depth-first search over edge colorings.
//!
//! Edges are assigned column by column, `(0,1), (0,2), (1,2), (0,3), ...`,
//! so vertex `j` is completed as soon as edge `(j-1, j)` is colored and every
//! `k`-subset whose largest vertex is `j` is fully decided at that point.
//! After each assignment, every `k`-subset through the new edge must still be
//! able to reach `ell` colors: distinct assigned colors plus its unassigned
//! edges. Colors are tried in increasing order and a fresh color may only
//! be the next unused id, which removes color-relabeling symmetry and makes
//! the first certificate found the lexicographically least one in edge
//! order.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::coloring::{edge_index, Color, ColoredCompleteGraph, LocalSpec};
use crate::combin::{next_combination, pairs};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveBudget {
    pub node_limit: u64,
    /// Wall-clock cap. Runs that stop on time are not reproducible.
    pub time_limit: Option<Duration>,
}

impl SolveBudget {
    pub fn nodes(node_limit: u64) -> Self {
        SolveBudget {
            node_limit,
            time_limit: None,
        }
    }

    pub fn unlimited() -> Self {
        Self::nodes(u64::MAX)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum Feasibility {
    Feasible { certificate: ColoredCompleteGraph },
    Infeasible,
    BudgetExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeasibleRun {
    pub colors: usize,
    pub nodes: u64,
    #[serde(flatten)]
    pub result: Feasibility,
}

struct Search<'a> {
    n: usize,
    spec: LocalSpec,
    max_colors: usize,
    order: &'a [(usize, usize)],
    assigned: Vec<Color>,
    stamp: Vec<u64>,
    epoch: u64,
    nodes: u64,
    budget: SolveBudget,
    started: Instant,
    exhausted: bool,
}

const UNSET: Color = Color::MAX;

impl Search<'_> {
    fn out_of_budget(&mut self) -> bool {
        if self.nodes >= self.budget.node_limit {
            self.exhausted = true;
        } else if let Some(limit) = self.budget.time_limit {
            if self.nodes % 1024 == 0 && self.started.elapsed() >= limit {
                self.exhausted = true;
            }
        }
        self.exhausted
    }

    fn color(&self, u: usize, v: usize) -> Color {
        self.assigned[edge_index(self.n, u, v)]
    }

    /// Checks every k-subset containing the freshly colored edge `(i, j)`
    /// whose other vertices lie below `j`.
    fn still_possible(&mut self, i: usize, j: usize) -> bool {
        let k = self.spec.k;
        let pool: Vec<usize> = (0..j).filter(|&x| x != i).collect();
        if pool.len() < k - 2 {
            return true;
        }
        let mut idx: Vec<usize> = (0..k - 2).collect();
        let mut members = Vec::with_capacity(k);
        loop {
            members.clear();
            members.extend(idx.iter().map(|&t| pool[t]));
            members.push(i);
            if !self.subset_possible(&members, i, j) {
                return false;
            }
            if !next_combination(&mut idx, pool.len()) {
                return true;
            }
        }
    }

    /// `members` excludes `j`; edges `(x, j)` with `x > i` are unassigned.
    fn subset_possible(&mut self, members: &[usize], i: usize, j: usize) -> bool {
        self.epoch += 1;
        let epoch = self.epoch;
        let mut distinct = 0;
        let mut open = 0;
        for (t, &u) in members.iter().enumerate() {
            for &v in &members[t + 1..] {
                let c = self.color(u, v) as usize;
                if self.stamp[c] != epoch {
                    self.stamp[c] = epoch;
                    distinct += 1;
                }
            }
            if u > i {
                open += 1;
            } else {
                let c = self.color(u, j) as usize;
                if self.stamp[c] != epoch {
                    self.stamp[c] = epoch;
                    distinct += 1;
                }
            }
        }
        distinct + open >= self.spec.ell
    }

    fn dfs(&mut self, pos: usize, used: usize) -> bool {
        if pos == self.order.len() {
            return true;
        }
        let (i, j) = self.order[pos];
        let e = edge_index(self.n, i, j);
        let choices = (used + 1).min(self.max_colors);
        for c in 0..choices {
            if self.out_of_budget() {
                return false;
            }
            self.nodes += 1;
            self.assigned[e] = c as Color;
            if self.still_possible(i, j) && self.dfs(pos + 1, used.max(c + 1)) {
                return true;
            }
            if self.exhausted {
                return false;
            }
        }
        self.assigned[e] = UNSET;
        false
    }
}

fn check_query(n: usize, spec: LocalSpec) -> Result<()> {
    spec.validate()?;
    if spec.k > n {
        return Err(Error::KExceedsSize { k: spec.k, size: n });
    }
    Ok(())
}

/// Decides whether some coloring of `K_n` with at most `colors` colors has
/// the local property.
pub fn feasible(n: usize, spec: LocalSpec, colors: usize, budget: SolveBudget) -> Result<FeasibleRun> {
    check_query(n, spec)?;
    if colors == 0 {
        return Err(Error::InvalidArgument("color count must be at least 1".into()));
    }
    let order: Vec<(usize, usize)> = (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let mut search = Search {
        n,
        spec,
        max_colors: colors.min(pairs(n)),
        order: &order,
        assigned: vec![UNSET; pairs(n)],
        stamp: vec![0; colors.min(pairs(n)) + 1],
        epoch: 0,
        nodes: 0,
        budget,
        started: Instant::now(),
        exhausted: false,
    };
    let found = search.dfs(0, 0);
    let result = if found {
        Feasibility::Feasible {
            certificate: ColoredCompleteGraph::new(n, search.assigned.clone())?,
        }
    } else if search.exhausted {
        Feasibility::BudgetExhausted
    } else {
        Feasibility::Infeasible
    };
    Ok(FeasibleRun {
        colors,
        nodes: search.nodes,
        result,
    })
}

/// Colors needed because every color may occur at most `floor(k/2) - 1`
/// times once `ell >= C(k,2) - floor(k/2) + 2`; `None` outside that regime.
pub fn repetition_lower_bound(n: usize, spec: LocalSpec) -> Option<usize> {
    let half = spec.k / 2;
    if half < 2 || spec.ell + half < spec.pairs() + 2 {
        return None;
    }
    Some(pairs(n).div_ceil(half - 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolveStatus {
    Optimal,
    /// Some color counts were refuted by search before the budget ran out.
    BoundOnly,
    /// The budget ran out on the first color count searched.
    BudgetExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveLogEntry {
    pub colors: usize,
    pub nodes: u64,
    pub outcome: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveResult {
    pub n: usize,
    pub spec: LocalSpec,
    pub status: SolveStatus,
    /// Every color count below this is infeasible.
    pub lower_bound: usize,
    /// Color count of `certificate`; the optimum when `status` is optimal.
    pub value: usize,
    pub certificate: ColoredCompleteGraph,
    pub log: Vec<SolveLogEntry>,
}

impl SolveResult {
    /// The solve log as CSV (`colors,nodes,outcome`).
    pub fn log_csv(&self) -> String {
        let mut out = String::from("colors,nodes,outcome\n");
        for e in &self.log {
            out.push_str(&format!("{},{},{}\n", e.colors, e.nodes, e.outcome));
        }
        out
    }
}

/// Least number of colors of a coloring of `K_n` with the local property,
/// searched upward from `max(ell, repetition bound)`. The node budget is
/// shared by all color counts.
pub fn min_colors(n: usize, spec: LocalSpec, budget: SolveBudget) -> Result<SolveResult> {
    check_query(n, spec)?;
    let start = spec.ell.max(repetition_lower_bound(n, spec).unwrap_or(1));
    let mut log = Vec::new();
    let mut spent = 0u64;
    let started = Instant::now();
    for colors in start..=pairs(n) {
        let remaining = SolveBudget {
            node_limit: budget.node_limit.saturating_sub(spent),
            time_limit: budget.time_limit.map(|t| t.saturating_sub(started.elapsed())),
        };
        let run = feasible(n, spec, colors, remaining)?;
        spent = spent.saturating_add(run.nodes);
        let outcome = match &run.result {
            Feasibility::Feasible { .. } => "feasible",
            Feasibility::Infeasible => "infeasible",
            Feasibility::BudgetExhausted => "budget-exhausted",
        };
        log.push(SolveLogEntry {
            colors,
            nodes: run.nodes,
            outcome: outcome.into(),
        });
        match run.result {
            Feasibility::Feasible { certificate } => {
                return Ok(SolveResult {
                    n,
                    spec,
                    status: SolveStatus::Optimal,
                    lower_bound: colors,
                    value: certificate.num_colors(),
                    certificate,
                    log,
                });
            }
            Feasibility::Infeasible => {}
            Feasibility::BudgetExhausted => {
                let certificate = ColoredCompleteGraph::rainbow(n)?;
                return Ok(SolveResult {
                    n,
                    spec,
                    status: if colors == start {
                        SolveStatus::BudgetExhausted
                    } else {
                        SolveStatus::BoundOnly
                    },
                    lower_bound: colors,
                    value: certificate.num_colors(),
                    certificate,
                    log,
                });
            }
        }
    }
    unreachable!("the rainbow coloring satisfies every valid local property")
}
