use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stabcut::facet::{
    assert_facet_of_ft, check_conditions, face_dimension, face_equalities, find_witness,
    FacetWitness,
};
use stabcut::lifting::strengthened_lift;
use stabcut::projection::ProjectionTrace;
use stabcut::random::gnp;
use stabcut::VertexSet;

/// Traces whose hyperedges have a common size and consecutive overlaps of
/// `k - 1`, so that witnesses can exist.
fn chain_trace(
    n: usize,
    k: usize,
    r: usize,
    rng: &mut ChaCha8Rng,
    seed: u64,
) -> Option<ProjectionTrace> {
    let g = gnp(n, rng.gen_range(0.3..0.7), seed);
    let mut trace = ProjectionTrace::new(g);
    let mut prev: Option<VertexSet> = None;
    for _ in 0..r {
        let cur = trace.current().clone();
        let cands: Vec<VertexSet> = stabcut_verification::all_subsets(n)
            .filter(|s| s.len() == k && cur.is_clique(s))
            .filter(|s| prev.as_ref().is_none_or(|p| p.intersection_len(s) + 1 == k))
            .filter(|s| !trace.cliques().contains(s))
            .collect();
        if cands.is_empty() {
            return None;
        }
        let w = cands[rng.gen_range(0..cands.len())].clone();
        trace.push(w.clone()).ok()?;
        prev = Some(w);
    }
    Some(trace)
}

#[test]
fn conditions_predict_facets() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut confirmed = 0;
    for seed in 0..400 {
        let n = rng.gen_range(6..=9);
        let k = rng.gen_range(2..=3);
        let r = rng.gen_range(1..=3);
        let Some(trace) = chain_trace(n, k, r, &mut rng, seed) else {
            continue;
        };
        let gr = trace.current().clone();
        let seeds: Vec<VertexSet> = stabcut_verification::all_subsets(n)
            .filter(|s| !s.is_empty() && gr.is_maximal_clique(s))
            .collect();
        for w_next in &seeds {
            let Some(witness) = find_witness(&trace, w_next) else {
                continue;
            };
            let report = check_conditions(&trace, &witness, Some(w_next)).unwrap();
            assert!(report.first_claim() && report.second_claim());
            let cut = strengthened_lift(&trace, w_next, trace.len(), None).unwrap();
            for t in 1..=trace.len() {
                let dim = face_dimension(trace.base(), &face_equalities(&trace, t)).unwrap();
                assert_eq!(dim.affine_dim, (n - t) as i64, "seed {seed}");
                let facet = assert_facet_of_ft(&cut, t, Some(&witness)).unwrap();
                assert!(
                    facet.facet && facet.consistent(),
                    "seed {seed}, t {t}: {facet:?}"
                );
            }
            assert_edges_to_classes(&trace, &witness);
            confirmed += 1;
        }
    }
    assert!(
        confirmed >= 20,
        "only {confirmed} instances satisfied the conditions"
    );
}

/// Follows from (I), (II) and (IV): an outside vertex seeing
/// one member of a class `i < k` in `G_r` sees all of them.
fn assert_edges_to_classes(trace: &ProjectionTrace, w: &FacetWitness) {
    let gr = trace.current();
    let outside = w.outside(gr.vertex_count(), w.r());
    for class in &w.classes[..w.k - 1] {
        for o in outside.iter() {
            if class.iter().any(|v| gr.has_edge(v, o)) {
                assert!(
                    class.iter().all(|v| gr.has_edge(v, o)),
                    "{o} misses part of {class}"
                );
            }
        }
    }
}
