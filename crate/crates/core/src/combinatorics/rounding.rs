use crate::combinatorics::cliques::by_value_desc;
use crate::graph::{Graph, VertexSet};

/// Lower-bound heuristic: scan vertices by nonincreasing `x̄_v` and keep each
/// one that is not adjacent to those already kept. The result is a maximal
/// stable set.
pub fn rounding_lower_bound(g: &Graph, point: &[f64]) -> VertexSet {
    let n = g.vertex_count();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(by_value_desc(point));
    let mut blocked = fixedbitset::FixedBitSet::with_capacity(n);
    let mut chosen = VertexSet::new();
    for v in order {
        if !blocked.contains(v) {
            chosen.insert(v);
            blocked.insert(v);
            blocked.union_with(g.neighbors(v));
        }
    }
    chosen
}
