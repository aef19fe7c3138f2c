use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use stabcut::combinatorics::{
    enumerate_stable_sets, greedy_cliques_by_coverage, greedy_cliques_by_weight,
    max_weight_stable_set, rounding_lower_bound, solve_constrained, ConstrainedMwssQuery,
};
use stabcut::dimacs::{parse_dimacs, to_dimacs};
use stabcut::facet::face_dimension;
use stabcut::lifting::Inequality;
use stabcut::projection::clique_project;
use stabcut::random::gnp;
use stabcut::{Graph, VertexSet, WeightVector};

fn graph() -> impl Strategy<Value = Graph> {
    (1usize..=14, 0.0f64..=1.0, any::<u64>()).prop_map(|(n, d, seed)| gnp(n, d, seed))
}

fn graph_and_weights() -> impl Strategy<Value = (Graph, WeightVector)> {
    graph().prop_flat_map(|g| {
        let n = g.vertex_count();
        (
            Just(g),
            prop::collection::vec(0i64..=5, n).prop_map(WeightVector::new),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn mwss_matches_enumeration((g, w) in graph_and_weights()) {
        let best = enumerate_stable_sets(&g, 14).unwrap().map(|s| w.total(&s)).max().unwrap();
        let r = max_weight_stable_set(&g, &w, None).unwrap();
        prop_assert_eq!(r.exact_value().unwrap(), best);
        prop_assert!(g.is_stable(&r.best_set));
        prop_assert_eq!(w.total(&r.best_set), best);
        let q = solve_constrained(&ConstrainedMwssQuery::new(&g, w.clone())).unwrap();
        prop_assert_eq!(q.exact_value().unwrap(), best);
    }

    #[test]
    fn clique_iff_stable_in_complement(g in graph(), mask in any::<u16>()) {
        let w: VertexSet = (0..g.vertex_count()).filter(|&v| mask >> v & 1 == 1).collect();
        prop_assert_eq!(g.is_clique(&w), g.complement().is_stable(&w));
    }

    #[test]
    fn dimacs_round_trip(g in graph()) {
        let once = parse_dimacs(&to_dimacs(&g)).unwrap();
        prop_assert_eq!(&once, &g);
        prop_assert_eq!(parse_dimacs(&to_dimacs(&once)).unwrap(), g.clone());
        let all: VertexSet = (0..g.vertex_count()).collect();
        prop_assert_eq!(g.induced_subgraph(&all).unwrap().0.edge_count(), g.edge_count());
    }

    #[test]
    fn heuristics_return_maximal_cliques(g in graph(), seed in any::<u64>()) {
        let point = stabcut_verification::cover_point_or_random(&g, seed);
        let by_weight = greedy_cliques_by_weight(&g, &point);
        let by_cover = greedy_cliques_by_coverage(&g, &point, &VertexSet::new());
        for w in by_weight.iter().chain(&by_cover) {
            prop_assert!(g.is_maximal_clique(w), "{} in {:?}", w, g.edges().collect::<Vec<_>>());
        }
        prop_assert!(g.is_stable(&rounding_lower_bound(&g, &point)));
        prop_assert_eq!(by_weight, greedy_cliques_by_weight(&g, &point));
    }

    #[test]
    fn projection_is_idempotent(g in graph(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = stabcut_verification::random_maximal_clique(&g, &mut rng);
        prop_assume!(w.len() >= 2);
        let (once, _) = clique_project(&g, &w).unwrap();
        let (twice, added) = clique_project(&once, &w).unwrap();
        prop_assert!(added.is_empty());
        prop_assert_eq!(once, twice);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn face_dimension_ignores_labels(n in 2usize..=9, d in 0.2f64..0.8, seed in any::<u64>()) {
        let g = gnp(n, d, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cliques: Vec<VertexSet> = (0..2).map(|_| stabcut_verification::random_maximal_clique(&g, &mut rng)).collect();
        let eqs: Vec<Inequality> = cliques.iter().map(Inequality::clique).collect();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let h = Graph::from_edges(n, g.edges().map(|(u, v)| (perm[u], perm[v]))).unwrap();
        let moved: Vec<Inequality> =
            eqs.iter().map(|e| Inequality::new(e.coefficients().map(|(v, c)| (perm[v], c)), e.rhs())).collect();
        let a = face_dimension(&g, &eqs).unwrap();
        let b = face_dimension(&h, &moved).unwrap();
        prop_assert_eq!(a.affine_dim, b.affine_dim);
        prop_assert_eq!(a.witness_points.len() as i64, a.affine_dim + 1);
        for p in &a.witness_points {
            prop_assert!(g.is_stable(p));
            prop_assert!(eqs.iter().all(|e| e.lhs_of_set(p) == e.rhs()));
        }
    }
}
