mod common;

use localprop::energy::bound_report;
use localprop::forbidden::{max_mono_degree, popular_intersection_search, PopularSearch, ThmParams};
use localprop::solver::{feasible, min_colors, Feasibility, SolveBudget, SolveStatus};
use localprop::LocalSpec;

fn solve(n: usize, k: usize, ell: usize) -> localprop::solver::SolveResult {
    min_colors(n, LocalSpec::new(k, ell).unwrap(), SolveBudget::unlimited()).unwrap()
}

#[test]
fn matches_exhaustive_enumeration_up_to_five_vertices() {
    for n in 2..=5 {
        let table = common::exhaustive_f_table(n);
        for k in 2..=n {
            for ell in 1..=k * (k - 1) / 2 {
                let res = solve(n, k, ell);
                assert_eq!(res.status, SolveStatus::Optimal);
                assert_eq!(res.value, table[k][ell], "f({n},{k},{ell})");
                assert!(res.certificate.verify_local_property(res.spec).unwrap().holds);
                assert!(common::brute_witness(&res.certificate, k, ell).is_none());
            }
        }
    }
}

#[test]
fn triangle_property_is_chromatic_index() {
    for n in 3..=7 {
        let res = solve(n, 3, 3);
        let chi = common::chromatic_index(n);
        assert_eq!(res.value, chi, "n = {n}");
        assert_eq!(chi, if n % 2 == 0 { n - 1 } else { n });
        assert!(res.value >= n - 1);
        // a (3,3) coloring is exactly a proper one
        let g = &res.certificate;
        for v in 0..n {
            let mut seen: Vec<u32> = (0..n).filter(|&u| u != v).map(|u| g.color(u, v)).collect();
            seen.sort_unstable();
            seen.dedup();
            assert_eq!(seen.len(), n - 1);
        }
    }
}

#[test]
fn optimum_is_certified_on_both_sides() {
    for (n, k, ell) in [(5, 3, 3), (6, 3, 3), (6, 4, 5), (5, 4, 6)] {
        let res = solve(n, k, ell);
        let spec = res.spec;
        match feasible(n, spec, res.value, SolveBudget::unlimited()).unwrap().result {
            Feasibility::Feasible { certificate } => assert!(certificate.verify_local_property(spec).unwrap().holds),
            other => panic!("expected feasible, got {other:?}"),
        }
        if res.value > 1 {
            let below = feasible(n, spec, res.value - 1, SolveBudget::unlimited()).unwrap();
            assert_eq!(below.result, Feasibility::Infeasible);
        }
    }
}

#[test]
fn values_are_monotone() {
    for k in 2..=4 {
        for ell in 1..=k * (k - 1) / 2 {
            let mut prev = 0;
            for n in k..=6 {
                let v = solve(n, k, ell).value;
                assert!(v >= prev, "n-monotonicity at ({n},{k},{ell})");
                prev = v;
            }
        }
    }
    for n in 4..=6 {
        for k in 2..=4 {
            let mut prev = 0;
            for ell in 1..=k * (k - 1) / 2 {
                let v = solve(n, k, ell).value;
                assert!(v >= prev, "ell-monotonicity at ({n},{k},{ell})");
                prev = v;
            }
        }
    }
}

#[test]
fn small_budget_reports_status() {
    let res = min_colors(7, LocalSpec::new(4, 5).unwrap(), SolveBudget::nodes(10)).unwrap();
    assert_ne!(res.status, SolveStatus::Optimal);
    assert!(res.certificate.verify_local_property(res.spec).unwrap().holds);
    assert!(res.lower_bound <= res.value);
}

#[test]
fn thread_count_does_not_change_results() {
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| solve(6, 4, 5))
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn optima_contain_no_forbidden_configuration() {
    let p = ThmParams::new(6, 2).unwrap();
    let spec = p.local_spec().unwrap();
    assert_eq!((spec.k, spec.ell), (6, 14));
    for n in 6..=8 {
        let res = min_colors(n, spec, SolveBudget::unlimited()).unwrap();
        assert_eq!(res.status, SolveStatus::Optimal);
        let g = &res.certificate;
        assert!(max_mono_degree(g).max <= p.max_mono_degree(), "n = {n}");
        for j in 0..8u32 {
            if 1usize << j >= p.a() {
                let hit = popular_intersection_search(g, j, p, u128::MAX);
                assert!(matches!(hit, PopularSearch::None { .. }), "n = {n}, j = {j}: {hit:?}");
            }
        }
        let report = bound_report(g, p);
        assert!(!report.rich_bound_violated);
        assert!(report.forbidden_evidence.is_none());
    }
}
