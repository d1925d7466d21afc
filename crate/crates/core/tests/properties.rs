mod common;

use common::{brute_alpha_half, brute_min_separator};
use expander_core::certification::{certify_alpha_exact, certify_heuristic, heuristic_separator, Mode, Separator};
use expander_core::generators::fixtures::complete;
use expander_core::minors::{ccl_bruteforce, embed_or_separate, validate_minor, MinorOutcome};
use expander_core::paths::{
    cycle_spectrum_bruteforce, dfs, long_cycle, long_path, random_sigma, validate_path, CycleOutcome, PathOutcome,
    CYCLE_SPECTRUM_BUDGET,
};
use expander_core::{Graph, VertexSet};
use proptest::prelude::*;

fn graph(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi, 0.05f64..0.9).prop_flat_map(|(n, p)| {
        proptest::collection::vec(proptest::bool::weighted(p), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            Graph::from_edges(n, pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn edge_list_round_trip(g in graph(1, 30)) {
        let back = Graph::parse_str(&g.to_edge_list_string()).unwrap();
        prop_assert_eq!(back.graph_hash(), g.graph_hash());
        prop_assert_eq!(back, g);
    }

    #[test]
    fn dfs_forest_is_valid(g in graph(1, 30), seed in any::<u64>()) {
        let f = dfs(&g, &random_sigma(g.n(), seed)).unwrap();
        f.validate(&g).unwrap();
        prop_assert_eq!(f.roots.len(), g.components().len());
        for (v, p) in f.parent.iter().enumerate() {
            if let Some(p) = *p {
                prop_assert!(g.has_edge(v, p));
            }
        }
    }

    #[test]
    fn long_path_outcomes(g in graph(2, 16), kf in 0.0f64..1.0, ell in 1usize..8, seed in any::<u64>()) {
        let n = g.n();
        let k = 1 + ((n - 1) as f64 * kf) as usize % (n - 1);
        match long_path(&g, k, ell, &random_sigma(n, seed)).unwrap() {
            PathOutcome::Path { vertices, length } => {
                validate_path(&g, &vertices).unwrap();
                prop_assert_eq!(length + 1, vertices.len());
                prop_assert!(length >= ell);
            }
            PathOutcome::Witness { set, neighborhood } => {
                prop_assert_eq!(set.len(), k);
                prop_assert_eq!(g.neighborhood(&set).len(), neighborhood);
                prop_assert!(neighborhood < ell);
            }
        }
    }

    #[test]
    fn long_cycle_outcomes(g in graph(3, 12), kf in 0.0f64..1.0, ell in 2usize..6, seed in any::<u64>()) {
        let n = g.n();
        let k = 1 + ((n - 1) as f64 * kf) as usize % (n - 1);
        // dense graphs exceed the enumeration budget; those skip the membership check
        let spectrum = cycle_spectrum_bruteforce(&g, CYCLE_SPECTRUM_BUDGET / 20).ok();
        let in_spectrum = |l: usize| spectrum.as_ref().is_none_or(|s| s.contains(&l));
        match long_cycle(&g, k, ell, &random_sigma(n, seed)).unwrap() {
            CycleOutcome::Cycle { cycle, .. } => {
                cycle.validate(&g).unwrap();
                prop_assert!(cycle.length > ell);
                prop_assert!(in_spectrum(cycle.length));
            }
            CycleOutcome::Violation { w_set, neighborhood, cycle, .. } => {
                prop_assert!(2 * w_set.len() >= k && w_set.len() <= k);
                prop_assert_eq!(g.neighborhood(&w_set).len(), neighborhood);
                prop_assert!(neighborhood < ell);
                if let Some(c) = cycle {
                    c.validate(&g).unwrap();
                    prop_assert!(in_spectrum(c.length));
                }
            }
            CycleOutcome::NoLargeComponent { largest } => {
                prop_assert!(g.components().iter().all(|c| c.len() <= k));
                prop_assert_eq!(g.components().iter().map(VertexSet::len).max().unwrap(), largest);
            }
        }
    }

    #[test]
    fn exact_and_heuristic_bracket(g in graph(2, 16)) {
        let exact = certify_alpha_exact(&g, Mode::Half).unwrap();
        match brute_alpha_half(&g) {
            Some(a) => prop_assert!((exact.alpha_star - a.value()).abs() < 1e-12),
            None => prop_assert!(exact.alpha_star.is_infinite()),
        }
        let h = certify_heuristic(&g).unwrap();
        prop_assert!(!h.exhaustive);
        prop_assert!(h.lower <= exact.alpha_star + 1e-9);
        prop_assert!(exact.alpha_star <= h.upper + 1e-12);
    }

    #[test]
    fn separators_are_valid(g in graph(2, 14)) {
        let h = heuristic_separator(&g).unwrap();
        let s = &h.separator;
        Separator::new(&g, s.a.clone(), s.s.clone(), s.b.clone()).unwrap();
        prop_assert_eq!(s.s.len(), h.size);
        prop_assert!(h.size >= brute_min_separator(&g));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn embeddings_respect_ccl(g in graph(4, 9), t in 2usize..5, alpha in 0.05f64..0.6) {
        if let Ok(MinorOutcome::Embedding { embedding, .. }) = embed_or_separate(&g, &complete(t), alpha, false) {
            prop_assert_eq!(validate_minor(&g, &embedding), None);
            prop_assert!(t <= ccl_bruteforce(&g).unwrap());
        }
    }
}
