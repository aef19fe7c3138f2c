use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stabcut::combinatorics::{enumerate_stable_sets, stability_number};
use stabcut::lifting::{basic_lift, strength_report, strengthened_lift};
use stabcut::projection::{clique_project, is_projectable_edge};
use stabcut::random::gnp;
use stabcut::VertexSet;

#[test]
fn projection_sandwiches_the_clique_face() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for seed in 0..80 {
        let n = rng.gen_range(4..=12);
        let g = gnp(n, rng.gen_range(0.2..0.7), seed);
        let w = stabcut_verification::random_maximal_clique(&g, &mut rng);
        if w.len() < 2 {
            continue;
        }
        let (p, _) = clique_project(&g, &w).unwrap();
        for s in enumerate_stable_sets(&p, 12).unwrap() {
            assert!(g.is_stable(&s), "seed {seed}: {s} stable in G|W only");
        }
        for s in enumerate_stable_sets(&g, 12).unwrap() {
            if s.intersection_len(&w) == 1 {
                assert!(
                    p.is_stable(&s),
                    "seed {seed}: {s} meets W once but is not stable in G|W"
                );
            }
        }
    }
}

#[test]
fn projectable_edges_keep_alpha() {
    let mut checked = 0;
    for seed in 0..50 {
        let g = gnp(
            6 + (seed as usize % 7),
            0.3 + 0.1 * (seed % 4) as f64,
            100 + seed,
        );
        let alpha = stability_number(&g);
        for (u, v) in g.edges().collect::<Vec<_>>() {
            if is_projectable_edge(&g, u, v).unwrap() {
                let (p, _) = clique_project(&g, &VertexSet::from([u, v])).unwrap();
                assert_eq!(stability_number(&p), alpha, "seed {seed}, edge {u}-{v}");
                checked += 1;
            }
        }
    }
    assert!(checked > 100);
}

#[test]
fn faces_of_the_trace_sit_in_the_projected_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for seed in 0..60 {
        let n = rng.gen_range(5..=12);
        let g = gnp(n, rng.gen_range(0.25..0.65), 500 + seed);
        let trace = stabcut_verification::random_trace(&g, 4, &mut rng);
        let cliques = trace.cliques();
        let points: Vec<VertexSet> = enumerate_stable_sets(&g, 12).unwrap().collect();
        for t in 1..=trace.len() {
            let gt = trace.graph_at(t);
            let in_face =
                |s: &VertexSet, t: usize| cliques[..t].iter().all(|w| s.intersection_len(w) == 1);
            for s in points.iter().filter(|s| in_face(s, t)) {
                assert!(
                    gt.is_stable(s),
                    "seed {seed}: F_{t} point {s} not stable in G_{t}"
                );
            }
            for s in points.iter().filter(|s| in_face(s, t - 1)) {
                assert!(
                    s.intersection_len(&cliques[t - 1]) <= 1,
                    "seed {seed}: x(W_{t}) > 1 on F_{}",
                    t - 1
                );
            }
        }
    }
}

#[test]
fn paired_liftings_are_tight_and_valid() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let (mut pairs, mut componentwise, mut contained, mut chain) = (0, 0, 0, 0);
    for seed in 0..120 {
        let n = rng.gen_range(6..=12);
        let g = gnp(n, [0.2, 0.4, 0.6][seed as usize % 3], 900 + seed);
        let trace = stabcut_verification::random_trace(&g, 4, &mut rng);
        if trace.is_empty() {
            continue;
        }
        let w = stabcut_verification::random_maximal_clique(trace.current(), &mut rng);
        let b = basic_lift(&trace, &w, trace.len(), None).unwrap();
        let s = strengthened_lift(&trace, &w, trace.len(), None).unwrap();
        let report = strength_report(&b, &s).unwrap();
        assert!(
            report.strengthened_is_tight() && report.basic_is_valid(),
            "seed {seed}: {report:?}"
        );
        assert_eq!(report.strengthened_tightness, 1 + s.lambda_sum());
        pairs += 1;
        componentwise += usize::from(report.factors_dominated);
        contained += usize::from(report.support_contained);
        chain += usize::from(report.chain_holds());
    }
    assert!(pairs >= 80);
    // None of these is implied by validity and tightness.
    println!("factors dominated componentwise on {componentwise} of {pairs} pairs");
    println!("support contained on {contained} of {pairs} pairs");
    println!("alpha chain holds on {chain} of {pairs} pairs");
}
