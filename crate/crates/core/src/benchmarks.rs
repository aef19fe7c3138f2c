//! Generators for small DIMACS clique benchmarks.
//!
//! The cutting-plane code bounds stability numbers, so runs use the
//! complement of each clique instance; `α` of the complement is the clique
//! number of the instance.

use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq)]
pub struct BenchmarkInstance {
    pub name: &'static str,
    /// The graph as distributed for the clique problem.
    pub clique_graph: Graph,
    /// Its clique number.
    pub omega: usize,
}

impl BenchmarkInstance {
    /// The graph whose stable sets are the instance's cliques.
    pub fn stable_set_graph(&self) -> Graph {
        self.clique_graph.complement()
    }
}

/// Binary words of length `bits`, adjacent when they differ in at least `d`
/// positions.
pub fn hamming(bits: u32, d: u32) -> Graph {
    let n = 1usize << bits;
    let edges = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .filter(|&(u, v)| (u ^ v).count_ones() >= d);
    Graph::from_edges(n, edges).expect("generated edges are in range")
}

/// `n` vertices in `k = ⌊n / (c ln n)⌋` consecutive clusters of nearly equal
/// size (larger ones first); vertices are adjacent within a cluster and
/// between cyclically consecutive clusters.
pub fn c_fat(n: usize, c: f64) -> Graph {
    let k = ((n as f64) / (c * (n as f64).ln())).floor() as usize;
    let k = k.clamp(1, n.max(1));
    let mut cluster = Vec::with_capacity(n);
    let (base, extra) = (n / k, n % k);
    for i in 0..k {
        let size = base + usize::from(i < extra);
        cluster.extend(std::iter::repeat_n(i, size));
    }
    let near = |a: usize, b: usize| a == b || (a + 1) % k == b || (b + 1) % k == a;
    let edges = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .filter(|&(u, v)| near(cluster[u], cluster[v]));
    Graph::from_edges(n, edges).expect("generated edges are in range")
}

/// Lines of the affine plane over `Z_3`, the Steiner triple system on 9 points.
fn affine_plane_lines() -> Vec<[usize; 3]> {
    let point = |x: usize, y: usize| 3 * x + y;
    let mut lines = Vec::new();
    for (dx, dy) in [(1, 0), (0, 1), (1, 1), (1, 2)] {
        let mut seen = Vec::new();
        for x in 0..3 {
            for y in 0..3 {
                let mut line = [0; 3];
                for (s, slot) in line.iter_mut().enumerate() {
                    *slot = point((x + s * dx) % 3, (y + s * dy) % 3);
                }
                line.sort_unstable();
                if !seen.contains(&line) {
                    seen.push(line);
                }
            }
        }
        lines.extend(seen);
    }
    lines
}

/// The 45-vertex Steiner triple instance: its complement has a triangle per
/// triple (36 vertices) and one vertex per point (9 more) joined to the
/// triangle corners carrying that point.
pub fn mann_a9() -> Graph {
    let lines = affine_plane_lines();
    let rows = 3 * lines.len();
    let mut edges = Vec::new();
    for (i, line) in lines.iter().enumerate() {
        for (a, &p) in line.iter().enumerate() {
            for b in (a + 1)..3 {
                edges.push((3 * i + a, 3 * i + b));
            }
            edges.push((3 * i + a, rows + p));
        }
    }
    Graph::from_edges(rows + 9, edges)
        .expect("generated edges are in range")
        .complement()
}

pub fn hamming6_4() -> BenchmarkInstance {
    BenchmarkInstance {
        name: "hamming6-4",
        clique_graph: hamming(6, 4),
        omega: 4,
    }
}

pub fn c_fat200_1() -> BenchmarkInstance {
    BenchmarkInstance {
        name: "c-fat200-1",
        clique_graph: c_fat(200, 1.0),
        omega: 12,
    }
}

pub fn mann_a9_instance() -> BenchmarkInstance {
    BenchmarkInstance {
        name: "MANN_a9",
        clique_graph: mann_a9(),
        omega: 16,
    }
}

pub fn desk_scale() -> Vec<BenchmarkInstance> {
    vec![mann_a9_instance(), hamming6_4(), c_fat200_1()]
}
