//! Clique heuristics driven by a fractional point, and bounded maximal-clique
//! enumeration with Tomita pivoting.

use std::cmp::Ordering;

use fixedbitset::FixedBitSet;

use crate::graph::{Graph, VertexSet};

/// Cliques with `x̄_W` below this are dropped from the separation pool.
pub const CLIQUE_KEEP_THRESHOLD: f64 = 0.65;

/// Nonincreasing `x̄`, ties by lowest index.
pub(crate) fn by_value_desc(point: &[f64]) -> impl Fn(&usize, &usize) -> Ordering + '_ {
    move |&a, &b| {
        point[b]
            .partial_cmp(&point[a])
            .unwrap_or(Ordering::Equal)
            .then(a.cmp(&b))
    }
}

/// Extends the clique `base` to a maximal clique by scanning `order` and
/// adding every vertex adjacent to all current members.
pub fn extend_clique(
    g: &Graph,
    base: &VertexSet,
    order: impl IntoIterator<Item = usize>,
) -> VertexSet {
    let mut common = g.full_set();
    for v in base.iter() {
        common.intersect_with(g.neighbors(v));
    }
    let mut clique = base.clone();
    for u in order {
        if common.contains(u) {
            clique.insert(u);
            common.intersect_with(g.neighbors(u));
        }
    }
    clique
}

/// Greedy maximal clique containing `base`, preferring large `x̄` (ties by index).
pub fn grow_by_value(g: &Graph, base: &VertexSet, point: &[f64]) -> VertexSet {
    let mut order: Vec<usize> = (0..g.vertex_count()).collect();
    order.sort_by(by_value_desc(point));
    extend_clique(g, base, order)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Priority {
    Value,
    Uncovered,
}

fn greedy_cliques(
    g: &Graph,
    point: &[f64],
    covered: &VertexSet,
    priority: Priority,
    keep: f64,
) -> Vec<VertexSet> {
    let n = g.vertex_count();
    assert_eq!(point.len(), n, "one value per vertex");
    let mut covered = covered.to_bitset(n);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(by_value_desc(point));
    let mut out: Vec<VertexSet> = Vec::new();
    while let Some(start) = order.iter().copied().find(|&v| !covered.contains(v)) {
        let mut candidates: Vec<usize> = g.neighbors(start).ones().collect();
        match priority {
            Priority::Value => candidates.sort_by(by_value_desc(point)),
            Priority::Uncovered => {
                let rank = by_value_desc(point);
                candidates.sort_by(|a, b| {
                    covered
                        .contains(*a)
                        .cmp(&covered.contains(*b))
                        .then(rank(a, b))
                })
            }
        }
        let clique = extend_clique(g, &VertexSet::singleton(start), candidates);
        for v in clique.iter() {
            covered.insert(v);
        }
        if clique.weight(point) >= keep && !out.contains(&clique) {
            out.push(clique);
        }
    }
    out
}

/// Maximal cliques grown from uncovered start vertices, candidates taken in
/// nonincreasing `x̄`.
pub fn greedy_cliques_by_weight(g: &Graph, point: &[f64]) -> Vec<VertexSet> {
    greedy_cliques(
        g,
        point,
        &VertexSet::new(),
        Priority::Value,
        CLIQUE_KEEP_THRESHOLD,
    )
}

/// Like [`greedy_cliques_by_weight`] but vertices not yet covered (by `covered`
/// or by earlier cliques) are preferred, which keeps intersections small.
pub fn greedy_cliques_by_coverage(g: &Graph, point: &[f64], covered: &VertexSet) -> Vec<VertexSet> {
    greedy_cliques(
        g,
        point,
        covered,
        Priority::Uncovered,
        CLIQUE_KEEP_THRESHOLD,
    )
}

/// Both greedy versions with a custom keep threshold, in that order.
pub(crate) fn greedy_cliques_both(
    g: &Graph,
    point: &[f64],
    keep: f64,
) -> (Vec<VertexSet>, Vec<VertexSet>) {
    (
        greedy_cliques(g, point, &VertexSet::new(), Priority::Value, keep),
        greedy_cliques(g, point, &VertexSet::new(), Priority::Uncovered, keep),
    )
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundedCliques {
    pub cliques: Vec<VertexSet>,
    /// Index into `cliques` of the clique with the largest `x̄_W`.
    pub most_violated: Option<usize>,
    /// False if enumeration stopped at the limit.
    pub exhausted: bool,
}

impl BoundedCliques {
    pub fn best(&self) -> Option<&VertexSet> {
        self.most_violated.map(|i| &self.cliques[i])
    }
}

/// Enumerates maximal cliques (Bron–Kerbosch with Tomita pivoting), stopping
/// after `limit` cliques.
pub fn enumerate_cliques_bounded(g: &Graph, limit: usize, point: &[f64]) -> BoundedCliques {
    let mut e = Enumerator {
        g,
        limit: limit.max(1),
        found: Vec::new(),
        stopped: false,
    };
    let mut r = Vec::new();
    e.expand(
        &mut r,
        g.full_set(),
        FixedBitSet::with_capacity(g.vertex_count()),
    );
    let mut most_violated = None;
    let mut best = f64::NEG_INFINITY;
    for (i, c) in e.found.iter().enumerate() {
        let w = c.weight(point);
        if w > best {
            best = w;
            most_violated = Some(i);
        }
    }
    BoundedCliques {
        exhausted: !e.stopped,
        cliques: e.found,
        most_violated,
    }
}

struct Enumerator<'g> {
    g: &'g Graph,
    limit: usize,
    found: Vec<VertexSet>,
    stopped: bool,
}

impl Enumerator<'_> {
    fn expand(&mut self, r: &mut Vec<usize>, mut p: FixedBitSet, mut x: FixedBitSet) {
        if p.is_clear() {
            if x.is_clear() {
                self.found.push(r.iter().copied().collect());
                if self.found.len() >= self.limit {
                    self.stopped = true;
                }
            }
            return;
        }
        let pivot = p
            .ones()
            .chain(x.ones())
            .max_by_key(|&u| {
                (
                    p.intersection_count(self.g.neighbors(u)),
                    std::cmp::Reverse(u),
                )
            })
            .expect("p is non-empty");
        let mut branch = p.clone();
        branch.difference_with(self.g.neighbors(pivot));
        for v in branch.ones() {
            if self.stopped {
                return;
            }
            let nb = self.g.neighbors(v);
            let mut np = p.clone();
            np.intersect_with(nb);
            let mut nx = x.clone();
            nx.intersect_with(nb);
            r.push(v);
            self.expand(r, np, nx);
            r.pop();
            p.set(v, false);
            x.insert(v);
        }
    }
}
