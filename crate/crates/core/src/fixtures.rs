//! Small hand-checked instances shared by tests, docs and the CLI.
//!
//! Labels follow the drawings they come from (1-based); the graphs themselves
//! use 0-based indices, so label `k` is vertex `k - 1`.

use crate::graph::{Graph, VertexSet};

/// The 8-vertex graph used to illustrate projections and lifting.
pub const FIGURE1_EDGES: [(usize, usize); 17] = [
    (1, 2),
    (1, 3),
    (1, 4),
    (1, 5),
    (2, 3),
    (2, 5),
    (2, 6),
    (3, 4),
    (3, 6),
    (3, 7),
    (3, 8),
    (4, 7),
    (4, 8),
    (5, 8),
    (6, 7),
    (6, 8),
    (7, 8),
];

pub fn figure1_graph() -> Graph {
    Graph::from_edges(8, FIGURE1_EDGES.iter().map(|&(u, v)| (u - 1, v - 1))).expect("valid fixture")
}

/// Converts 1-based labels to a 0-based vertex set.
pub fn labels(ls: &[usize]) -> VertexSet {
    ls.iter().map(|&l| l - 1).collect()
}

/// Projection sequence `W_1 = {1,2,3}`, `W_2 = {1,3,4}`, `W_3 = {1,4,5}` (labels).
pub fn figure2_cliques() -> Vec<VertexSet> {
    vec![labels(&[1, 2, 3]), labels(&[1, 3, 4]), labels(&[1, 4, 5])]
}

/// Clique `{2,5,6,7,8}` of the thrice-projected graph, seed of the lifting examples.
pub fn figure2_seed() -> VertexSet {
    labels(&[2, 5, 6, 7, 8])
}

/// Wheel on a 5-cycle rim `a b c e d` with hub `f`: vertices a..f are 0..5.
///
/// Projecting the clique `{d, e, f}` adds the false edge `ac`, after which
/// `{a, b, c, f}` is a clique; lifting it yields `x_a + ... + x_e + 2 x_f <= 2`.
pub fn wheel5() -> Graph {
    let (a, b, c, d, e, f) = (0, 1, 2, 3, 4, 5);
    Graph::from_edges(
        6,
        [
            (a, b),
            (b, c),
            (c, e),
            (e, d),
            (d, a),
            (a, f),
            (b, f),
            (c, f),
            (d, f),
            (e, f),
        ],
    )
    .expect("valid fixture")
}

pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, edges).expect("valid fixture")
}
