//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each
//! and exits non-zero if any fails.

mod common;

use std::process::Command;
use std::time::{Duration, Instant};

use localprop::constructions::{
    behrend_set, collinear_point_set, random_coloring, verify_isosceles_free, verify_no_3ap, RandomColoringConfig,
};
use localprop::energy::dyadic_profile;
use localprop::forbidden::{counting_lemma_find, mono_degree_violations, SetSystemInstance, ThmParams};
use localprop::number_sets::{
    difference_color_graph, difference_set, distance_color_graph, erdos_sos_bound, g_search,
    verify_diff_local_property, verify_distance_local_property, GSearchOutcome,
};
use localprop::solver::{min_colors, SolveBudget, SolveStatus};
use localprop::{ColoredCompleteGraph, IntegerSet, LocalSpec, Point, PointSet};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

fn pairs(n: usize) -> u128 {
    (n * n.saturating_sub(1) / 2) as u128
}

fn spec(k: usize, ell: usize) -> LocalSpec {
    LocalSpec::new(k, ell).unwrap()
}

/// Random colorings with `n <= 12` and varied color counts, plus the
/// rainbow and monochromatic extremes.
fn coloring_corpus(count: u64) -> Vec<ColoredCompleteGraph> {
    let mut out = Vec::new();
    for seed in 0..count {
        let n = 2 + (seed % 11) as usize;
        let colors = 1 + (seed / 11 % 20) as u32;
        out.push(random_coloring(RandomColoringConfig { n, colors, seed }).unwrap());
    }
    for n in 1..=12 {
        out.push(ColoredCompleteGraph::rainbow(n).unwrap());
        out.push(ColoredCompleteGraph::monochromatic(n).unwrap());
    }
    out
}

fn exact_f_table() -> Check {
    let expected = [(3, 3), (4, 3), (5, 5), (6, 5)];
    for (n, want) in expected {
        let res = min_colors(n, spec(3, 3), SolveBudget::unlimited()).map_err(|e| e.to_string())?;
        ensure!(res.status == SolveStatus::Optimal, "f({n},3,3) not proved optimal");
        ensure!(res.value == want, "f({n},3,3) = {}, expected {want}", res.value);
        ensure!(res.value >= n - 1, "f({n},3,3) below n - 1");
        ensure!(
            common::brute_witness(&res.certificate, 3, 3).is_none(),
            "certificate for n = {n} fails the full scan"
        );
        ensure!(common::chromatic_index(n) == want, "chromatic index of K_{n} differs");
        if n <= 5 {
            let table = common::exhaustive_f_table(n);
            ensure!(table[3][3] == want, "exhaustive enumeration gives {} for n = {n}", table[3][3]);
        }
    }
    Ok("f(3..6,3,3) = 3,3,5,5; enumeration (n<=5), full scan and chromatic index agree".into())
}

fn cauchy_schwarz() -> Check {
    let corpus = coloring_corpus(1100);
    for g in &corpus {
        let e = g.color_energy().map_err(|e| e.to_string())?;
        ensure!(e * g.num_colors() as u128 >= pairs(g.n()).pow(2), "violated at n = {}", g.n());
    }
    for n in 2..=12 {
        for g in [ColoredCompleteGraph::rainbow(n).unwrap(), ColoredCompleteGraph::monochromatic(n).unwrap()] {
            let e = g.color_energy().unwrap();
            ensure!(e * g.num_colors() as u128 == pairs(n).pow(2), "no equality at n = {n}");
        }
    }
    Ok(format!("{} colorings, equality on rainbow and monochromatic", corpus.len()))
}

fn energy_oracle() -> Check {
    let corpus: Vec<_> = coloring_corpus(1100).into_iter().filter(|g| g.n() <= 8).collect();
    for g in &corpus {
        let e = g.color_energy().map_err(|e| e.to_string())?;
        ensure!(e == common::quadruple_energy(g), "mismatch at n = {}", g.n());
    }
    Ok(format!("{} colorings with n <= 8 match quadruple enumeration", corpus.len()))
}

fn lemma_fuzz() -> Check {
    let mut rng = StdRng::seed_from_u64(2024);
    let mut tested = 0;
    while tested < 10_000 {
        let n = rng.random_range(2..=12usize);
        let d = rng.random_range(2..=3usize);
        let m = rng.random_range(n.div_ceil(2)..=n);
        // k m^d >= 2d n^d, in integers
        let need = (2 * d as u128 * (n as u128).pow(d as u32)).div_ceil((m as u128).pow(d as u32)) as usize;
        let k = need.max(d) + rng.random_range(0..=3usize);
        let sets: Vec<Vec<usize>> = (0..k)
            .map(|_| {
                let size = rng.random_range(m..=n);
                let mut all: Vec<usize> = (0..n).collect();
                for i in 0..size {
                    let j = rng.random_range(i..n);
                    all.swap(i, j);
                }
                let mut s = all[..size].to_vec();
                s.sort_unstable();
                s
            })
            .collect();
        let inst = SetSystemInstance { n, sets, d };
        let min = inst.sets.iter().map(Vec::len).min().unwrap();
        let lhs = inst.sets.len() as u128 * (min as u128).pow(d as u32);
        ensure!(lhs >= 2 * d as u128 * (n as u128).pow(d as u32), "generator broke the hypothesis");
        ensure!(inst.hypothesis_holds(), "hypothesis check disagrees");
        let hit = counting_lemma_find(&inst).map_err(|e| e.to_string())?;
        let Some(hit) = hit else {
            return Err(format!("no hit for n = {n}, d = {d}, k = {k}"));
        };
        let chosen: Vec<Vec<usize>> = hit.indices.iter().map(|&i| inst.sets[i].clone()).collect();
        let inter = common::best_intersection(&chosen, d);
        ensure!(inter == hit.intersection, "reported intersection is wrong");
        // |cap| >= m^d / (2 n^(d-1)), cross-multiplied
        ensure!(
            inter as u128 * 2 * (n as u128).pow(d as u32 - 1) >= (min as u128).pow(d as u32),
            "intersection below threshold"
        );
        tested += 1;
    }
    Ok(format!("{tested} instances satisfying the hypothesis, all hit"))
}

fn erdos_sos() -> Check {
    let s = spec(4, 5);
    let mut runs = 0;
    for n in 4..=6 {
        for cap in n as i64..=18 {
            match g_search(n, s, cap, u128::MAX).map_err(|e| e.to_string())? {
                GSearchOutcome::Found(r) => {
                    ensure!(r.value >= erdos_sos_bound(n), "n = {n}, M = {cap}: {} < bound", r.value);
                    ensure!(verify_diff_local_property(&r.certificate, s).unwrap().holds, "bad certificate");
                }
                GSearchOutcome::Infeasible { .. } => {}
                GSearchOutcome::BudgetExceeded { .. } => return Err("budget exceeded".into()),
            }
            runs += 1;
        }
    }
    let GSearchOutcome::Found(r) = g_search(4, s, 10, u128::MAX).map_err(|e| e.to_string())? else {
        return Err("no set found for n = 4, M = 10".into());
    };
    ensure!(r.value == 5, "g(4,(4,5),10) = {}", r.value);
    ensure!(verify_diff_local_property(&r.certificate, s).unwrap().holds, "certificate fails");
    ensure!(difference_set(&r.certificate).unwrap().len() == 5, "certificate value differs");
    let listed = IntegerSet::new(vec![1, 2, 4, 7]).unwrap();
    ensure!(difference_set(&listed).unwrap().len() == 5, "{{1,2,4,7}} does not reach 5");
    Ok(format!("{runs} searches above C(n,2)-n+2; value 5 with certificate {:?}", r.certificate.elements()))
}

fn check_diff(a: &IntegerSet) -> Result<(), String> {
    let g = difference_color_graph(a).map_err(|e| e.to_string())?;
    for k in 2..=a.len() {
        for ell in 1..=k * (k - 1) / 2 {
            let direct = verify_diff_local_property(a, spec(k, ell)).unwrap();
            let via = g.verify_local_property(spec(k, ell)).unwrap().map(|i| a.elements()[i]);
            ensure!(via == direct, "difference disagreement on {:?}", a.elements());
            let oracle = common::brute_diff_witness(a, k, ell);
            ensure!(direct.witness.map(|w| (w.subset, w.distinct)) == oracle, "oracle disagreement");
        }
    }
    Ok(())
}

fn check_dist(p: &PointSet) -> Result<(), String> {
    let g = distance_color_graph(p).map_err(|e| e.to_string())?;
    for k in 2..=p.len() {
        for ell in 1..=k * (k - 1) / 2 {
            let direct = verify_distance_local_property(p, spec(k, ell)).unwrap();
            ensure!(g.verify_local_property(spec(k, ell)).unwrap() == direct, "distance disagreement");
            let oracle = common::brute_distance_witness(p, k, ell);
            ensure!(direct.witness.map(|w| (w.subset, w.distinct)) == oracle, "oracle disagreement");
        }
    }
    Ok(())
}

fn reduction_soundness() -> Check {
    let mut sets = 0;
    for mask in 0u32..(1 << 10) {
        let e: Vec<i64> = (0..10).filter(|b| mask >> b & 1 == 1).map(i64::from).collect();
        if (2..=7).contains(&e.len()) {
            check_diff(&IntegerSet::new(e).unwrap())?;
            sets += 1;
        }
    }
    let grid: Vec<Point> = (0..3).flat_map(|x| (0..3).map(move |y| Point(x, y))).collect();
    let mut point_sets = 0;
    for mask in 0u32..(1 << 9) {
        let pts: Vec<Point> = (0..9).filter(|b| mask >> b & 1 == 1).map(|b| grid[b]).collect();
        if (2..=7).contains(&pts.len()) {
            check_dist(&PointSet::new(pts).unwrap())?;
            point_sets += 1;
        }
    }
    let mut rng = StdRng::seed_from_u64(77);
    for _ in 0..200 {
        let size = rng.random_range(8..=10);
        let a: IntegerSet = (0..size * 4).map(|_| rng.random_range(-40..=40i64)).collect::<IntegerSet>();
        let a = IntegerSet::new(a.elements()[..size.min(a.len())].to_vec()).unwrap();
        check_diff(&a)?;
        let mut pts: Vec<Point> = Vec::new();
        while pts.len() < size {
            let q = Point(rng.random_range(-4..=4), rng.random_range(-4..=4));
            if !pts.contains(&q) {
                pts.push(q);
            }
        }
        check_dist(&PointSet::new(pts).unwrap())?;
    }
    Ok(format!("{sets} exhaustive sets, {point_sets} exhaustive point sets, 200 random of each at size <= 10"))
}

fn behrend_isosceles() -> Check {
    for size in 1..=128 {
        let a = behrend_set(size).map_err(|e| e.to_string())?;
        ensure!(a.len() >= size, "size {size}: only {} elements", a.len());
        ensure!(verify_no_3ap(&a).is_none() && !common::has_3ap(a.elements()), "3-AP at size {size}");
        ensure!(verify_isosceles_free(&collinear_point_set(&a)).is_none(), "isosceles at size {size}");
    }
    let mut rng = StdRng::seed_from_u64(5);
    let mut with_ap = 0;
    for _ in 0..1000 {
        let len = rng.random_range(3..=12);
        let a: IntegerSet = (0..len).map(|_| rng.random_range(0..60i64)).collect();
        let ap = common::has_3ap(a.elements());
        ensure!(verify_no_3ap(&a).is_some() == ap, "3-AP detector disagrees on {:?}", a.elements());
        ensure!(verify_isosceles_free(&collinear_point_set(&a)).is_some() == ap, "equivalence fails");
        with_ap += usize::from(ap);
    }
    Ok(format!("sizes 1..=128 clean; equivalence on 1000 random sets ({with_ap} with a 3-AP)"))
}

fn star_heavy(n: usize, p: ThmParams, seed: u64) -> ColoredCompleteGraph {
    let mut rng = StdRng::seed_from_u64(seed);
    let center = rng.random_range(0..n);
    let mut others: Vec<usize> = (0..n).filter(|&v| v != center).collect();
    for i in 0..others.len() {
        let j = rng.random_range(i..others.len());
        others.swap(i, j);
    }
    let star = &others[..p.max_mono_degree() + 1];
    let palette = rng.random_range(2..=6u64);
    ColoredCompleteGraph::from_fn(n, |i, j| {
        if (i == center && star.contains(&j)) || (j == center && star.contains(&i)) {
            0
        } else {
            1 + rng.random_range(0..palette + (n * n) as u64)
        }
    })
    .unwrap()
}

fn forbidden_consequence() -> Check {
    let mut built = 0;
    for seed in 0..100u64 {
        let a = 2 + (seed % 2) as usize;
        let b = 2 + (seed / 2 % 2) as usize;
        let p = ThmParams::from_ab(a, b).unwrap();
        let n = p.subset_size() + (seed / 4 % 4) as usize;
        let g = star_heavy(n, p, seed);
        ensure!(!mono_degree_violations(&g, p).is_empty(), "construction missed the threshold");
        let s = p.local_spec().unwrap();
        ensure!(s.ell == s.pairs() - b * a + b + 1, "wrong ell");
        ensure!(!g.verify_local_property(s).unwrap().holds, "property holds for seed {seed}");
        built += 1;
    }
    Ok(format!("{built} of 100 violating instances fail the property"))
}

fn poor_bound() -> Check {
    let mut corpus = coloring_corpus(1100);
    for (n, k, ell) in [(5, 3, 3), (6, 3, 3), (6, 4, 5), (7, 6, 14), (8, 6, 14)] {
        corpus.push(min_colors(n, spec(k, ell), SolveBudget::unlimited()).unwrap().certificate);
    }
    for mask in (1u32..(1 << 12)).step_by(7) {
        let e: Vec<i64> = (0..12).filter(|b| mask >> b & 1 == 1).map(i64::from).collect();
        if e.len() >= 2 {
            corpus.push(difference_color_graph(&IntegerSet::new(e).unwrap()).unwrap());
        }
    }
    let p = ThmParams::new(6, 2).unwrap();
    for g in &corpus {
        let prof = dyadic_profile(g, p);
        ensure!(prof.within_edge_count(), "profile check fails at n = {}", g.n());
        let mult = common::multiplicities(g);
        for j in 0..16u32 {
            let k_j = mult.values().filter(|&&m| m >= 1 << j).count() as u128;
            ensure!(k_j << j <= pairs(g.n()), "k_{j} too large at n = {}", g.n());
            ensure!(prof.k_j(j as usize) as u128 == k_j, "profile k_{j} differs from oracle");
        }
    }
    Ok(format!("{} colorings, k_j 2^j <= C(n,2) at every scale", corpus.len()))
}

fn determinism() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let bin = env!("CARGO_BIN_EXE_localprop");
    let cmds: &[&[&str]] = &[
        &["construct", "random", "--n", "10", "--colors", "6", "--seed", "9", "--out", "out.json"],
        &["construct", "estimate", "--n", "7", "--k", "4", "--ell", "5", "--trials", "300", "--seed", "9"],
        &["construct", "behrend", "--size", "64", "--out", "out.json"],
        &["solve-f", "--n", "6", "--k", "4", "--ell", "5", "--certificate", "out.json"],
        &["solve-g", "--n", "5", "--k", "4", "--ell", "5", "--range-cap", "16", "--certificate", "out.json"],
    ];
    for args in cmds {
        let mut seen: Option<(Vec<u8>, Vec<u8>)> = None;
        for threads in ["1", "2", "4"] {
            let out = Command::new(bin)
                .current_dir(dir.path())
                .args(["--threads", threads])
                .args(*args)
                .output()
                .map_err(|e| e.to_string())?;
            ensure!(out.status.success(), "{args:?} exited {:?}", out.status.code());
            let file = std::fs::read(dir.path().join("out.json")).unwrap_or_default();
            let now = (out.stdout, file);
            if let Some(prev) = &seen {
                ensure!(*prev == now, "{args:?} differs at {threads} threads");
            }
            seen = Some(now);
        }
    }
    Ok(format!("{} seeded commands byte-identical at 1, 2 and 4 threads", cmds.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Check, Duration); 10] = [
        ("exact f table", exact_f_table, Duration::from_secs(60)),
        ("Cauchy-Schwarz", cauchy_schwarz, Duration::from_secs(10)),
        ("energy oracle", energy_oracle, Duration::from_secs(60)),
        ("counting lemma fuzz", lemma_fuzz, Duration::from_secs(60)),
        ("difference-set desk check", erdos_sos, Duration::from_secs(300)),
        ("reduction soundness", reduction_soundness, Duration::from_secs(300)),
        ("Behrend and isosceles", behrend_isosceles, Duration::from_secs(300)),
        ("forbidden configuration", forbidden_consequence, Duration::from_secs(300)),
        ("poor bound", poor_bound, Duration::from_secs(300)),
        ("determinism", determinism, Duration::from_secs(300)),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let took = start.elapsed();
        let result = match result {
            Ok(msg) if took > *limit => Err(format!("{msg}; took {took:.1?}, limit {limit:?}")),
            other => other,
        };
        match result {
            Ok(msg) => println!("PASS criterion {:>2} ({name}): {msg} [{took:.2?}]", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {:>2} ({name}): {msg} [{took:.2?}]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
