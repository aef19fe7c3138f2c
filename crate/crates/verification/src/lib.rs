//! Instance generators and brute-force oracles shared by the integration
//! and acceptance tests.

use rand::seq::SliceRandom;
use rand::Rng;
use stabcut::lp::{edge_clique_cover, lp_solve, LpModel};
use stabcut::projection::ProjectionTrace;
use stabcut::{Graph, VertexSet};

/// Maximal cliques grown greedily from each vertex in a random order.
pub fn random_maximal_clique<R: Rng>(g: &Graph, rng: &mut R) -> VertexSet {
    let mut order: Vec<usize> = (0..g.vertex_count()).collect();
    order.shuffle(rng);
    let mut w = VertexSet::new();
    for v in order {
        if w.iter().all(|u| g.has_edge(u, v)) {
            w.insert(v);
        }
    }
    w
}

/// Up to `len` projections of random maximal cliques with at least two
/// vertices, each creating a false edge when possible.
pub fn random_trace<R: Rng>(g: &Graph, len: usize, rng: &mut R) -> ProjectionTrace {
    let mut trace = ProjectionTrace::new(g.clone());
    for _ in 0..len {
        let mut pushed = false;
        for _ in 0..8 {
            let w = random_maximal_clique(trace.current(), rng);
            if w.len() < 2 || trace.cliques().contains(&w) {
                continue;
            }
            let before = trace.current().edge_count();
            let mut next = trace.clone();
            next.push(w).unwrap();
            if next.current().edge_count() > before {
                trace = next;
                pushed = true;
                break;
            }
        }
        if !pushed {
            break;
        }
    }
    trace
}

/// Optimum of the edge clique cover relaxation.
pub fn cover_point(g: &Graph) -> Vec<f64> {
    let mut model = LpModel::new(g.vertex_count());
    for w in edge_clique_cover(g) {
        model.add_row(w.iter().map(|v| (v, 1.0)), 1.0).unwrap();
    }
    lp_solve(&model).x
}

pub fn all_subsets(n: usize) -> impl Iterator<Item = VertexSet> {
    (0u32..1 << n).map(move |m| (0..n).filter(|&v| m >> v & 1 == 1).collect())
}

/// The cover relaxation optimum, or a random point in `[0, 1]^n` for odd seeds.
pub fn cover_point_or_random(g: &Graph, seed: u64) -> Vec<f64> {
    if seed.is_multiple_of(2) {
        cover_point(g)
    } else {
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        (0..g.vertex_count())
            .map(|_| rng.gen_range(0.0..=1.0))
            .collect()
    }
}

/// Maximum of `c x` over `A x <= b, 0 <= x <= 1` by trying every basis of
/// `n` tight constraints.
pub fn vertex_enumeration(c: &[f64], rows: &[(Vec<f64>, f64)]) -> f64 {
    let n = c.len();
    let mut cons: Vec<(Vec<f64>, f64)> = rows.to_vec();
    for j in 0..n {
        let mut e = vec![0.0; n];
        e[j] = 1.0;
        cons.push((e.clone(), 1.0));
        e[j] = -1.0;
        cons.push((e, 0.0));
    }
    let feasible = |x: &[f64]| {
        cons.iter()
            .all(|(a, b)| a.iter().zip(x).map(|(p, q)| p * q).sum::<f64>() <= b + 1e-9)
    };
    let mut best = f64::NEG_INFINITY;
    let mut pick = Vec::new();
    choose(cons.len(), n, 0, &mut pick, &mut |idx| {
        if let Some(x) = solve(idx.iter().map(|&i| cons[i].clone()).collect()) {
            if feasible(&x) {
                best = best.max(c.iter().zip(&x).map(|(p, q)| p * q).sum());
            }
        }
    });
    best
}

fn choose(m: usize, k: usize, start: usize, pick: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if pick.len() == k {
        f(pick);
        return;
    }
    for i in start..m {
        pick.push(i);
        choose(m, k, i + 1, pick, f);
        pick.pop();
    }
}

/// Gaussian elimination with partial pivoting; `None` when singular.
fn solve(mut sys: Vec<(Vec<f64>, f64)>) -> Option<Vec<f64>> {
    let n = sys.len();
    for col in 0..n {
        let p = (col..n).max_by(|&a, &b| sys[a].0[col].abs().total_cmp(&sys[b].0[col].abs()))?;
        if sys[p].0[col].abs() < 1e-9 {
            return None;
        }
        sys.swap(col, p);
        for r in 0..n {
            if r != col {
                let f = sys[r].0[col] / sys[col].0[col];
                if f != 0.0 {
                    let (pivot_row, pivot_rhs) = sys[col].clone();
                    for (x, y) in sys[r].0.iter_mut().zip(&pivot_row) {
                        *x -= f * y;
                    }
                    sys[r].1 -= f * pivot_rhs;
                }
            }
        }
    }
    Some((0..n).map(|i| sys[i].1 / sys[i].0[i]).collect())
}
