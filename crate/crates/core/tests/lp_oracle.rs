use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stabcut::lp::{lp_solve, LpModel, LpStatus};
use stabcut::Graph;

#[test]
fn simplex_matches_vertex_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for case in 0..100 {
        let n = rng.gen_range(1..=6);
        let m = rng.gen_range(0..=8);
        let c: Vec<f64> = (0..n).map(|_| rng.gen_range(-3..=5) as f64).collect();
        let mut model = LpModel::with_objective(c.clone());
        let mut rows = Vec::new();
        for _ in 0..m {
            let a: Vec<f64> = (0..n)
                .map(|_| {
                    if rng.gen_bool(0.3) {
                        0.0
                    } else {
                        rng.gen_range(-2..=4) as f64
                    }
                })
                .collect();
            let b = rng.gen_range(0..=6) as f64 / 2.0;
            if model.add_row(a.iter().copied().enumerate(), b).is_ok() {
                rows.push((a, b));
            }
        }
        let sol = lp_solve(&model);
        assert_eq!(sol.status, LpStatus::Optimal, "case {case}");
        let expected = stabcut_verification::vertex_enumeration(&c, &rows);
        assert!(
            (sol.value - expected).abs() <= 1e-8,
            "case {case}: simplex {} vs enumeration {expected}",
            sol.value
        );
        let at_x: f64 = c.iter().zip(&sol.x).map(|(p, q)| p * q).sum();
        assert!(
            (at_x - expected).abs() <= 1e-8,
            "case {case}: primal point value {at_x}"
        );
        for (a, b) in &rows {
            assert!(
                a.iter().zip(&sol.x).map(|(p, q)| p * q).sum::<f64>() <= b + 1e-8,
                "case {case}: infeasible"
            );
        }
    }
}

#[test]
fn c5_edge_model() {
    let g = Graph::cycle(5);
    let mut model = LpModel::new(5);
    for (u, v) in g.edges() {
        model.add_row([(u, 1.0), (v, 1.0)], 1.0).unwrap();
    }
    assert_eq!(lp_solve(&model).value, 2.5);
}
