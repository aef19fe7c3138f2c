use fixedbitset::FixedBitSet;

use crate::graph::{Graph, VertexSet};

/// Greedy edge clique cover. Each uncovered edge (in lexicographic order)
/// is grown into a maximal clique, adding the candidate with the most
/// still-uncovered edges to the current members (ties by index).
pub fn edge_clique_cover(g: &Graph) -> Vec<VertexSet> {
    let n = g.vertex_count();
    let mut uncovered: Vec<FixedBitSet> = (0..n).map(|v| g.neighbors(v).clone()).collect();
    let mut out = Vec::new();
    for (u, v) in g.edges() {
        if !uncovered[u].contains(v) {
            continue;
        }
        let mut members = vec![u, v];
        let mut common = g.neighbors(u).clone();
        common.intersect_with(g.neighbors(v));
        while let Some(best) = common.ones().max_by_key(|&c| {
            (
                members
                    .iter()
                    .filter(|&&x| uncovered[c].contains(x))
                    .count(),
                std::cmp::Reverse(c),
            )
        }) {
            members.push(best);
            common.intersect_with(g.neighbors(best));
        }
        for &a in &members {
            for &b in &members {
                uncovered[a].set(b, false);
            }
        }
        out.push(members.into_iter().collect());
    }
    out
}
