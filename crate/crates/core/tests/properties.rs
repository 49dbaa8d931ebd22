mod common;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tcdesign::design::{hypercube_design, hypercube_journey, spanning_tree_labelling};
use tcdesign::format::{parse_graph, write_graph};
use tcdesign::hardness::{
    assignment_to_labelling, build_gadget, labelling_to_assignment, random_formula, Assignment,
};
use tcdesign::random::{
    clique_router_sparsify, complete_graph, gnp_instance, uniform_random_labelling,
};
use tcdesign::reachability::{foremost_oracle, SortedTimeEdges, DEFAULT_ORACLE_STATES};
use tcdesign::removal::{greedy_removal, is_minimal, removal_profit_exact, ExactConfig};
use tcdesign::{foremost, is_temporally_connected, Error, Label, TemporalGraph};

fn graph(seed: u64, max_n: usize, max_labels: usize, alpha: Label) -> TemporalGraph {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let n = 1 + (seed as usize % max_n);
    common::random_temporal_graph(&mut r, n, max_labels, alpha, seed.is_multiple_of(3))
}

fn tc_graph(seed: u64) -> TemporalGraph {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let g = common::random_temporal_graph(&mut r, 4, 11, 6, false);
        if is_temporally_connected(&g) {
            return g;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn foremost_matches_oracle(seed in any::<u64>(), start in 0u32..10) {
        let g = graph(seed, 9, 24, 10);
        for s in 0..g.vertex_count() {
            let fast = foremost(&g, s, start).unwrap();
            let slow = foremost_oracle(&g, s, start, DEFAULT_ORACLE_STATES).unwrap();
            prop_assert_eq!(&fast.arrival, &slow.arrival);
        }
    }

    #[test]
    fn later_start_never_arrives_earlier(seed in any::<u64>(), t1 in 0u32..8, dt in 0u32..8) {
        let g = graph(seed, 8, 20, 12);
        for s in 0..g.vertex_count() {
            let early = foremost(&g, s, t1).unwrap();
            let late = foremost(&g, s, t1 + dt).unwrap();
            for v in (0..g.vertex_count()).filter(|&v| v != s) {
                match (early.arrival[v], late.arrival[v]) {
                    (None, Some(_)) => prop_assert!(false, "later start reached {}", v),
                    (Some(a), Some(b)) => prop_assert!(a <= b),
                    _ => {}
                }
            }
        }
    }

    #[test]
    fn vertex_relabelling_preserves_arrivals(seed in any::<u64>()) {
        let g = graph(seed, 8, 20, 8);
        let n = g.vertex_count();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(!seed));
        let h = g.relabel_vertices(&perm).unwrap();
        prop_assert_eq!(is_temporally_connected(&g), is_temporally_connected(&h));
        for s in 0..n {
            let a = foremost(&g, s, 0).unwrap();
            let b = foremost(&h, perm[s], 0).unwrap();
            for v in 0..n {
                prop_assert_eq!(a.arrival[v], b.arrival[perm[v]]);
            }
        }
    }

    #[test]
    fn every_time_edge_examined_once(seed in any::<u64>()) {
        let g = graph(seed, 8, 30, 12);
        let (sorted, _) = SortedTimeEdges::with_comparison_count(&g);
        prop_assert_eq!(sorted.len(), g.time_edges().len());
        for s in 0..g.vertex_count() {
            let (_, examined) = sorted.foremost_counted(s, 0).unwrap();
            prop_assert_eq!(examined, sorted.len());
        }
    }

    #[test]
    fn reconstructed_journeys_are_foremost(seed in any::<u64>()) {
        let g = graph(seed, 8, 20, 10);
        for s in 0..g.vertex_count() {
            let res = foremost(&g, s, 0).unwrap();
            for v in (0..g.vertex_count()).filter(|&v| v != s) {
                match res.reconstruct(v).unwrap() {
                    Some(j) => {
                        prop_assert!(g.validate_journey(&j));
                        prop_assert_eq!(j.source(), Some(s));
                        prop_assert_eq!(j.target(), Some(v));
                        prop_assert_eq!(j.arrival_time(), res.arrival[v]);
                    }
                    None => prop_assert!(res.arrival[v].is_none()),
                }
            }
        }
    }

    #[test]
    fn removing_a_label_costs_one(seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let g = graph(seed, 8, 20, 10);
        let inst = g.label_instances();
        prop_assume!(!inst.is_empty());
        let (e, l) = inst[pick.index(inst.len())];
        let h = g.remove_label(e, l).unwrap();
        prop_assert_eq!(h.cost() + 1, g.cost());
        prop_assert!(h.is_sub_labelling_of(&g));
        if is_temporally_connected(&h) {
            prop_assert!(is_temporally_connected(&g));
        }
    }

    #[test]
    fn graph_files_round_trip(seed in any::<u64>()) {
        let g = graph(seed, 10, 30, 50);
        prop_assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn greedy_below_exact_below_spanning_bound(seed in any::<u64>()) {
        let g = tc_graph(seed);
        let greedy = greedy_removal(&g, seed).unwrap();
        let exact = removal_profit_exact(&g, ExactConfig::default()).unwrap();
        prop_assert!(exact.exact);
        prop_assert!(greedy.profit <= exact.profit);
        prop_assert!(exact.profit <= g.cost() - (g.vertex_count() - 1));
        prop_assert!(is_minimal(&greedy.residual).unwrap());
        prop_assert_eq!(greedy.residual.cost(), g.cost() - greedy.profit);
        prop_assert!(is_temporally_connected(&exact.residual));
    }

    #[test]
    fn tree_design_journeys(seed in any::<u64>(), n in 2usize..40) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_connected_graph(&mut r, n, n);
        let root = seed as usize % n;
        let d = spanning_tree_labelling(&g, root).unwrap();
        prop_assert_eq!(d.labelling.cost(), 2 * (n - 1));
        prop_assert!(d.labelling.underlying().is_sub_labelling_of(&g.underlying()));
        for u in 0..n {
            for v in (0..n).filter(|&v| v != u) {
                let j = d.journey(u, v);
                prop_assert!(d.labelling.validate_journey(&j));
                prop_assert_eq!((j.source(), j.target()), (Some(u), Some(v)));
            }
        }
    }

    #[test]
    fn hypercube_journeys_climb_dimensions(k in 1u32..7, u in any::<usize>(), v in any::<usize>()) {
        let d = hypercube_design(k).unwrap();
        let (u, v) = (u % d.vertex_count(), v % d.vertex_count());
        if u == v {
            prop_assert_eq!(hypercube_journey(&d, u, v), Err(Error::EqualEndpoints));
        } else {
            let j = hypercube_journey(&d, u, v).unwrap();
            prop_assert_eq!(j.len(), (u ^ v).count_ones() as usize);
            prop_assert!(d.labelling.validate_journey(&j));
            let dims: Vec<u32> =
                j.steps.iter().map(|t| d.dimension_of_label(t.label).unwrap()).collect();
            prop_assert!(dims.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn gadget_assignments_round_trip(seed in any::<u64>(), half in 1usize..5) {
        let n = 2 * half;
        let phi = random_formula(n, seed).unwrap();
        let g = build_gadget(&phi);
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let values: Vec<bool> = (0..n).map(|_| rand::Rng::random_bool(&mut r, 0.5)).collect();
        let tau = Assignment::new(&phi, values).unwrap();
        let l = assignment_to_labelling(&g, &tau).unwrap();
        prop_assert_eq!(g.graph.cost() - l.cost(), 9 * n + tau.satisfied);
        let back = labelling_to_assignment(&g, &l).unwrap();
        prop_assert_eq!(back.assignment.values, tau.values);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn clique_router_grows_with_gamma(seed in any::<u64>(), g1 in 0.2f64..1.0, dg in 0.0f64..1.0) {
        let small = clique_router_sparsify(48, 8, g1, seed).unwrap();
        let large = clique_router_sparsify(48, 8, g1 + dg, seed).unwrap();
        prop_assert!(small.graph.is_sub_labelling_of(&large.graph));
        if small.report.tc_verdict {
            prop_assert!(large.report.tc_verdict);
        }
    }

    #[test]
    fn gnp_edges_grow_with_p(seed in any::<u64>(), p1 in 0.0f64..1.0, dp in 0.0f64..1.0) {
        let p2 = (p1 + dp).min(1.0);
        let a = gnp_instance(40, p1, seed).unwrap();
        let b = gnp_instance(40, p2, seed).unwrap();
        prop_assert!(a.is_sub_labelling_of(&b));
    }
}

#[test]
fn sort_comparisons_scale_like_c_log_c() {
    let mut r = ChaCha8Rng::seed_from_u64(5);
    let mut prev: Option<(f64, f64)> = None;
    for exp in 10..=16 {
        let c = 1usize << exp;
        let mut g = TemporalGraph::directed(1 << 10);
        let mut labels: Vec<Label> = (1..=c as Label).collect();
        labels.shuffle(&mut r);
        for (i, l) in labels.into_iter().enumerate() {
            g.add_label(i % 1024, (i / 1024 + i + 1) % 1024, l).unwrap();
        }
        let (_, comparisons) = SortedTimeEdges::with_comparison_count(&g);
        let model = c as f64 * (c as f64).log2();
        if let Some((prev_cmp, prev_model)) = prev {
            let growth = comparisons as f64 / prev_cmp;
            assert!(growth <= 2.0 * model / prev_model, "c={c}: growth {growth}");
        }
        prev = Some((comparisons as f64, model));
    }
}

#[test]
fn uniform_labels_have_flat_frequencies() {
    let alpha: Label = 10;
    let g = uniform_random_labelling(&complete_graph(200), alpha, 3).unwrap();
    let mut counts = vec![0f64; alpha as usize];
    for (_, ls) in g.edges() {
        assert_eq!(ls.len(), 1);
        counts[ls.min().unwrap() as usize - 1] += 1.0;
    }
    let expected = g.edge_count() as f64 / alpha as f64;
    let chi2: f64 = counts
        .iter()
        .map(|c| (c - expected).powi(2) / expected)
        .sum();
    // 0.999 quantile of chi-square with 9 degrees of freedom.
    assert!(chi2 < 27.88, "chi2 = {chi2}");
}

#[test]
fn gnp_density_matches_p() {
    let (n, p) = (300usize, 0.3);
    let g = gnp_instance(n, p, 8).unwrap();
    let pairs = (n * (n - 1) / 2) as f64;
    let sd = (pairs * p * (1.0 - p)).sqrt();
    assert!((g.edge_count() as f64 - pairs * p).abs() < 4.0 * sd);
}
