mod common;

use pocdim::competition::{is_realization, Graph};
use pocdim::dimsearch::{
    dim_poc, is_interval_graph, search_cell, verify_induced_monotonicity, CellStatus, DimValue, Monotonicity,
    SearchBudget,
};
use proptest::prelude::*;

fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

fn graph_from_mask(n: usize, mask: u32) -> Graph {
    let pairs = all_pairs(n);
    Graph::with_indices(n, pairs.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &e)| e)).unwrap()
}

fn budget(d_max: usize, use_oracles: bool) -> SearchBudget {
    SearchBudget {
        d_max,
        use_oracles,
        ..SearchBudget::default()
    }
}

fn check_witness(g: &Graph, value: DimValue, witness: Option<&pocdim::competition::PointConfig>) {
    if let Some(w) = witness {
        assert!(is_realization(w, g, g.labels()).unwrap());
        // One more axis keeps it a realization.
        assert!(is_realization(&w.padded(), g, g.labels()).unwrap());
        if let DimValue::Exact(d) | DimValue::AtMost(d) = value {
            assert_eq!(w.dim(), d);
        }
    }
}

#[test]
fn search_agrees_with_characterizations_on_small_graphs() {
    for n in 1..=4 {
        let m = all_pairs(n).len();
        for mask in 0..1u32 << m {
            let g = graph_from_mask(n, mask);
            let fast = dim_poc(&g, &budget(2, true)).unwrap();
            let slow = dim_poc(&g, &budget(2, false)).unwrap();
            assert_eq!(fast.value, slow.value, "n={n} mask={mask:b}");
            assert!(slow.k_complete);
            check_witness(&g, slow.value, slow.witness.as_ref());
            check_witness(&g, fast.value, fast.witness.as_ref());
        }
    }
}

#[test]
fn interval_recognition_matches_brute_force() {
    for n in 1..=5 {
        let m = all_pairs(n).len();
        // Every graph up to 4 vertices, a stride through the 1024 on five.
        let step = if n == 5 { 7 } else { 1 };
        for mask in (0..1u32 << m).step_by(step) {
            let g = graph_from_mask(n, mask);
            assert_eq!(is_interval_graph(&g).unwrap(), common::is_interval_brute(n, g.edges()), "n={n} mask={mask:b}");
        }
    }
}

#[test]
fn cycles_need_three_dimensions() {
    let g = Graph::cycle(4);
    for k in 0..=g.edge_count() {
        for d in 1..=2 {
            assert_eq!(search_cell(&g, d, k, u64::MAX).unwrap().report.status, CellStatus::Exhausted);
        }
    }
    let r = dim_poc(&g, &budget(3, false)).unwrap();
    assert_eq!(r.value, DimValue::Exact(3));
    check_witness(&g, r.value, r.witness.as_ref());
}

#[test]
fn search_is_deterministic_across_thread_counts() {
    let g = Graph::cycle(4);
    let run = |threads| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| dim_poc(&g, &budget(3, true)).unwrap())
    };
    let one = run(1);
    assert_eq!(one, run(4));
    assert_eq!(one, run(2));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn isomorphic_graphs_share_the_dimension(mask in 0u32..1 << 10, perm in Just((0..5).collect::<Vec<usize>>()).prop_shuffle()) {
        let g = graph_from_mask(5, mask);
        let h = Graph::with_indices(5, g.edges().iter().map(|&(u, v)| (perm[u], perm[v]))).unwrap();
        let (a, b) = (dim_poc(&g, &budget(2, false)).unwrap(), dim_poc(&h, &budget(2, false)).unwrap());
        prop_assert_eq!(a.value, b.value);
        prop_assert_eq!(a.lower_bound, b.lower_bound);
    }

    #[test]
    fn induced_subgraphs_are_not_harder(mask in 0u32..1 << 10, drop in 0usize..5) {
        let g = graph_from_mask(5, mask);
        let keep: Vec<String> = g.labels().iter().enumerate().filter(|(i, _)| *i != drop).map(|(_, l)| l.clone()).collect();
        let h = g.induced(&keep).unwrap();
        let r = verify_induced_monotonicity(&g, &h, &budget(2, true)).unwrap();
        prop_assert_ne!(r.verdict, Monotonicity::Violated);
        if let (Some(hu), Some(gu)) = (r.subgraph.upper_bound(), r.graph.upper_bound()) {
            prop_assert!(hu <= gu);
        }
    }

    /// Searching without the characterizations rediscovers them on five vertices.
    #[test]
    fn two_axes_exactly_for_interval_graphs(mask in 0u32..1 << 10) {
        let g = graph_from_mask(5, mask);
        let r = dim_poc(&g, &budget(2, false)).unwrap();
        check_witness(&g, r.value, r.witness.as_ref());
        prop_assert_eq!(r.upper_bound().is_some(), is_interval_graph(&g).unwrap());
    }
}
