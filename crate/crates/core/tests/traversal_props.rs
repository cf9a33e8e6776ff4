mod common;

use common::{gnp, one_based, oracle_corpus};
use perturbcc::oracle::{bfs_levels, eccentricity, uf_components};
use perturbcc::traversal::{
    algebraic_bfs_component, gss_component, sis_component, ReachState, SweepRule,
};
use perturbcc::{components_via, DriverOptions, Graph, Strategy as Algo};
use proptest::prelude::*;

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

/// Reached sets after each sweep until the fixpoint, starting with `{start}`.
fn reached_history(g: &Graph, rule: SweepRule, start: usize) -> Vec<Vec<bool>> {
    let order: Vec<usize> = (0..g.vertex_count()).collect();
    let mut state = ReachState::new(g.vertex_count(), start);
    let mut history = vec![state.reached().to_vec()];
    loop {
        let newly = state.sweep(g, rule, &order);
        history.push(state.reached().to_vec());
        if newly.is_empty() {
            return history;
        }
    }
}

#[test]
fn sis_levels_equal_bfs_levels_on_seeded_corpus() {
    let corpus = oracle_corpus(200, 11);
    let mut checked = 0;
    for (g, _) in &corpus {
        let n = g.vertex_count();
        for start in [0, n / 2, n - 1] {
            let levels = bfs_levels(g, start);
            let (comp, trace) = sis_component(g, start).unwrap();
            let sis_levels: Vec<Vec<usize>> =
                trace.newly_reached.iter().cloned().map(sorted).collect();
            let bfs: Vec<Vec<usize>> = levels.levels[1..].iter().cloned().map(sorted).collect();
            assert_eq!(sis_levels, bfs, "n={n} start={start}");
            assert_eq!(comp, sorted(levels.reached()));
            let (bfs_comp, bfs_trace) = algebraic_bfs_component(g, start).unwrap();
            assert_eq!(bfs_comp, comp);
            assert_eq!(bfs_trace.iterations_used, trace.iterations_used);
            checked += 1;
        }
    }
    assert!(checked >= 600);
}

#[test]
fn worked_example_traces() {
    let g = common::example_graph();
    let (_, sis) = sis_component(&g, 0).unwrap();
    assert_eq!(sis.iterations_used, 4);
    assert_eq!(sis.json_lines()[0], r#"{"k":1,"new":[2]}"#);
    let (_, gss) = gss_component(&g, 0).unwrap();
    assert_eq!(gss.iterations_used, 2);

    let ordered = one_based(5, &[(1, 2), (2, 3), (3, 4), (4, 5)]);
    assert_eq!(gss_component(&ordered, 0).unwrap().1.iterations_used, 1);
    assert_eq!(sis_component(&ordered, 0).unwrap().1.iterations_used, 4);
    // strict inequality against eccentricity on the ordered chain
    assert!(1 < eccentricity(&ordered, 0));

    let reversed = one_based(5, &[(1, 5), (2, 3), (3, 4), (4, 5)]);
    let (_, trace) = gss_component(&reversed, 0).unwrap();
    assert_eq!(trace.newly_reached, vec![vec![4], vec![3], vec![2], vec![1]]);
    assert_eq!(sis_component(&reversed, 0).unwrap().1.iterations_used, 4);
}

fn graph_and_start() -> impl Strategy<Value = (Graph, usize)> {
    (1usize..70, 0.0f64..0.12, any::<u64>(), any::<prop::sample::Index>())
        .prop_map(|(n, p, seed, s)| (gnp(n, p, seed), s.index(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn gss_reaches_at_least_sis_after_every_sweep((g, start) in graph_and_start()) {
        let sis = reached_history(&g, SweepRule::SimpleIteration, start);
        let gss = reached_history(&g, SweepRule::GaussSeidel, start);
        let last_gss = gss.last().unwrap().clone();
        for (k, sis_k) in sis.iter().enumerate() {
            let gss_k = gss.get(k).unwrap_or(&last_gss);
            for v in 0..g.vertex_count() {
                prop_assert!(!sis_k[v] || gss_k[v], "k={} v={}", k, v);
            }
        }
    }

    #[test]
    fn reached_sets_never_shrink((g, start) in graph_and_start()) {
        for rule in [SweepRule::AlgebraicBfs, SweepRule::SimpleIteration, SweepRule::GaussSeidel] {
            let history = reached_history(&g, rule, start);
            for w in history.windows(2) {
                for v in 0..g.vertex_count() {
                    prop_assert!(!w[0][v] || w[1][v]);
                }
            }
        }
    }

    #[test]
    fn gss_iterations_bounded_by_eccentricity((g, start) in graph_and_start()) {
        let (_, trace) = gss_component(&g, start).unwrap();
        prop_assert!(trace.iterations_used <= eccentricity(&g, start));
        prop_assert_eq!(trace.sweeps, trace.iterations_used + 1);
    }

    #[test]
    fn ascending_chains_finish_in_the_same_sweep((g, start) in graph_and_start()) {
        let history = reached_history(&g, SweepRule::GaussSeidel, start);
        for k in 1..history.len() {
            for j in 0..g.vertex_count() {
                if !history[k][j] || history[k - 1][j] {
                    continue;
                }
                // everything on an ascending-index chain out of j
                let mut stack = vec![j];
                while let Some(v) = stack.pop() {
                    for &u in g.neighbors(v) {
                        if u > v {
                            prop_assert!(history[k][u], "k={} chain {}->{} missed", k, v, u);
                            stack.push(u);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn monotone_path_is_one_gss_sweep(n in 2usize..200, s in any::<prop::sample::Index>()) {
        let edges: Vec<(usize, usize)> = (1..n).map(|v| (v - 1, v)).collect();
        let g = Graph::new(n, edges).unwrap();
        let start = s.index(n);
        let (_, trace) = gss_component(&g, start).unwrap();
        // ascending side completes in sweep 1; descending side one vertex per sweep
        let expected = start.max(usize::from(start + 1 < n));
        prop_assert_eq!(trace.iterations_used, expected);
        if start + 1 < n {
            prop_assert_eq!(trace.newly_reached[0].len(), n - 1 - start + usize::from(start > 0));
        }
    }

    #[test]
    fn every_strategy_matches_union_find(n in 1usize..40, p in 0.0f64..0.2, seed in any::<u64>()) {
        let g = gnp(n, p, seed);
        let truth = uf_components(&g);
        for s in Algo::ALL {
            let run = components_via(&g, s, &DriverOptions::default()).unwrap();
            prop_assert_eq!(&run.partition, &truth, "{:?}", s);
            prop_assert_eq!(run.runs.len(), truth.count());
        }
    }

    #[test]
    fn masking_is_neutral(n in 1usize..120, p in 0.0f64..0.08, seed in any::<u64>()) {
        let g = gnp(n, p, seed);
        for s in [Algo::AlgebraicBfs, Algo::Sis, Algo::Gss] {
            let masked = components_via(&g, s, &DriverOptions::default()).unwrap();
            let plain = components_via(&g, s, &DriverOptions { masking: false, ..DriverOptions::default() }).unwrap();
            prop_assert_eq!(masked.partition, plain.partition);
        }
    }
}

#[test]
fn driver_traces_are_kept_on_request() {
    let g = common::example_graph();
    let opts = DriverOptions {
        keep_trace: true,
        ..DriverOptions::default()
    };
    let run = components_via(&g, Algo::Gss, &opts).unwrap();
    assert_eq!(run.runs.len(), 1);
    assert_eq!(run.runs[0].trace.newly_reached.len(), 2);
    assert_eq!(run.total_iterations(), 2);
    let quiet = components_via(&g, Algo::Gss, &DriverOptions::default()).unwrap();
    assert!(quiet.runs[0].trace.newly_reached.is_empty());
}
