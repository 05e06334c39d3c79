//! Brute-force reference implementations shared by the integration tests.
//! None of these reuse the crate's enumeration code.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use localprop::{ColoredCompleteGraph, IntegerSet, Point, PointSet};

/// All `k`-subsets of `0..n` in lexicographic order, by recursion.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            go(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub fn color_at(colors: &[u32], n: usize, i: usize, j: usize) -> u32 {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    // count edges in rows before i, then offset in row i
    let before: usize = (0..i).map(|r| n - 1 - r).sum();
    colors[before + (j - i - 1)]
}

pub fn distinct_in(colors: &[u32], n: usize, s: &[usize]) -> usize {
    let mut seen = BTreeSet::new();
    for a in 0..s.len() {
        for b in a + 1..s.len() {
            seen.insert(color_at(colors, n, s[a], s[b]));
        }
    }
    seen.len()
}

/// Least failing `k`-subset with its distinct count, scanning all subsets.
pub fn brute_witness(g: &ColoredCompleteGraph, k: usize, ell: usize) -> Option<(Vec<usize>, usize)> {
    subsets(g.n(), k).into_iter().find_map(|s| {
        let d = distinct_in(g.colors(), g.n(), &s);
        (d < ell).then_some((s, d))
    })
}

/// Smallest number of distinct colors over all `k`-subsets.
pub fn min_distinct(colors: &[u32], n: usize, k: usize) -> usize {
    subsets(n, k)
        .iter()
        .map(|s| distinct_in(colors, n, s))
        .min()
        .unwrap_or(usize::MAX)
}

/// Ordered pairs of edges with equal colors, counted one quadruple
/// `(i, j, p, q)` at a time.
pub fn quadruple_energy(g: &ColoredCompleteGraph) -> u128 {
    let n = g.n();
    let mut count = 0u128;
    for i in 0..n {
        for j in i + 1..n {
            for p in 0..n {
                for q in p + 1..n {
                    if g.color(i, j) == g.color(p, q) {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

/// Every coloring of `edges` slots up to relabeling: restricted growth
/// strings, one per set partition.
pub fn set_partitions(edges: usize) -> Vec<Vec<u32>> {
    fn go(cur: &mut Vec<u32>, max: u32, edges: usize, out: &mut Vec<Vec<u32>>) {
        if cur.len() == edges {
            out.push(cur.clone());
            return;
        }
        for c in 0..=max + 1 {
            cur.push(c);
            go(cur, max.max(c), edges, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if edges == 0 {
        return vec![Vec::new()];
    }
    let mut cur = vec![0];
    go(&mut cur, 0, edges, &mut out);
    out
}

/// Exhaustive table `f(n, k, ell)` for `k in 2..=n`, indexed `[k][ell]`.
pub fn exhaustive_f_table(n: usize) -> Vec<Vec<usize>> {
    let edges = n * (n - 1) / 2;
    let mut best = vec![vec![usize::MAX; edges + 1]; n + 1];
    for colors in set_partitions(edges) {
        let used = colors.iter().copied().max().map_or(0, |m| m as usize + 1);
        for k in 2..=n {
            let md = min_distinct(&colors, n, k);
            for ell in 1..=md.min(k * (k - 1) / 2) {
                if used < best[k][ell] {
                    best[k][ell] = used;
                }
            }
        }
    }
    best
}

/// Least number of colors in a proper edge coloring of `K_n`.
pub fn chromatic_index(n: usize) -> usize {
    let edges: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    if edges.is_empty() {
        return 0;
    }
    fn fits(edges: &[(usize, usize)], assign: &mut Vec<usize>, c: usize, used: usize) -> bool {
        let idx = assign.len();
        if idx == edges.len() {
            return true;
        }
        let (i, j) = edges[idx];
        for col in 0..c.min(used + 1) {
            let clash = edges[..idx]
                .iter()
                .zip(assign.iter())
                .any(|(&(p, q), &a)| a == col && (p == i || p == j || q == i || q == j));
            if !clash {
                assign.push(col);
                if fits(edges, assign, c, used.max(col + 1)) {
                    return true;
                }
                assign.pop();
            }
        }
        false
    }
    (1..).find(|&c| fits(&edges, &mut Vec::new(), c, 0)).unwrap()
}

/// Distinct positive differences within a subset of values.
pub fn distinct_differences(vals: &[i64]) -> usize {
    let mut seen = BTreeSet::new();
    for a in 0..vals.len() {
        for b in a + 1..vals.len() {
            seen.insert((vals[a] - vals[b]).abs());
        }
    }
    seen.len()
}

pub fn distinct_distances(pts: &[Point]) -> usize {
    let mut seen = BTreeSet::new();
    for a in 0..pts.len() {
        for b in a + 1..pts.len() {
            let dx = (pts[a].0 - pts[b].0) as i128;
            let dy = (pts[a].1 - pts[b].1) as i128;
            seen.insert(dx * dx + dy * dy);
        }
    }
    seen.len()
}

/// Least failing `k`-subset of set elements.
pub fn brute_diff_witness(a: &IntegerSet, k: usize, ell: usize) -> Option<(Vec<i64>, usize)> {
    let e = a.elements();
    subsets(e.len(), k).into_iter().find_map(|s| {
        let vals: Vec<i64> = s.iter().map(|&i| e[i]).collect();
        let d = distinct_differences(&vals);
        (d < ell).then_some((vals, d))
    })
}

/// Least failing `k`-subset of point indices.
pub fn brute_distance_witness(p: &PointSet, k: usize, ell: usize) -> Option<(Vec<usize>, usize)> {
    let pts = p.points();
    subsets(pts.len(), k).into_iter().find_map(|s| {
        let sel: Vec<Point> = s.iter().map(|&i| pts[i]).collect();
        let d = distinct_distances(&sel);
        (d < ell).then_some((s, d))
    })
}

/// Quadruples `(a, b, c, d)` with `a + b = c + d`.
pub fn quadruple_additive_energy(a: &[i64]) -> u128 {
    let mut count = 0u128;
    for &x in a {
        for &y in a {
            for &z in a {
                for &w in a {
                    if x + y == z + w {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

pub fn has_3ap(a: &[i64]) -> bool {
    let set: BTreeSet<i64> = a.iter().copied().collect();
    for (i, &x) in a.iter().enumerate() {
        for &z in &a[i + 1..] {
            if (x + z) % 2 == 0 && x != z && set.contains(&((x + z) / 2)) {
                return true;
            }
        }
    }
    false
}

/// Size of the largest common intersection over all `d`-tuples of sets.
pub fn best_intersection(sets: &[Vec<usize>], d: usize) -> usize {
    subsets(sets.len(), d)
        .iter()
        .map(|idx| {
            let mut common: BTreeSet<usize> = sets[idx[0]].iter().copied().collect();
            for &i in &idx[1..] {
                let other: BTreeSet<usize> = sets[i].iter().copied().collect();
                common = common.intersection(&other).copied().collect();
            }
            common.len()
        })
        .max()
        .unwrap_or(0)
}

/// Color multiplicities by a hash map over raw edges.
pub fn multiplicities(g: &ColoredCompleteGraph) -> HashMap<u32, u64> {
    let mut m = HashMap::new();
    for i in 0..g.n() {
        for j in i + 1..g.n() {
            *m.entry(g.color(i, j)).or_insert(0) += 1;
        }
    }
    m
}
