//! Clique projection `G | W` and sequences of projections.
//!
//! Projecting a clique `W` adds every non-edge `uv` with
//! `W ⊆ N(u) ∪ N(v)`; these added pairs are the *false edges* of the step.
//! Stable sets of `G` that meet `W` exactly once stay stable in `G | W`.

use serde::{Deserialize, Serialize};

use crate::combinatorics::mwss::{solve_constrained, ConstrainedMwssQuery};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet, WeightVector};

pub type Edge = (usize, usize);

/// Projects the clique `w` of `g`, returning `G | W` and its false edges
/// (each `(u, v)` with `u < v`, sorted).
pub fn clique_project(g: &Graph, w: &VertexSet) -> Result<(Graph, Vec<Edge>)> {
    let false_edges = false_edges(g, w)?;
    let projected = g.with_edges(&false_edges)?;
    Ok((projected, false_edges))
}

/// The false edges `clique_project` would add, without building the graph.
pub fn false_edges(g: &Graph, w: &VertexSet) -> Result<Vec<Edge>> {
    if w.len() < 2 {
        return Err(Error::CliqueTooSmall(w.len()));
    }
    g.check_vertex_set(w)?;
    if !g.is_clique(w) {
        return Err(Error::NotAClique(w.as_slice().to_vec()));
    }
    let n = g.vertex_count();
    let w_bits = w.to_bitset(n);
    let mut out = Vec::new();
    for u in 0..n {
        if w_bits.contains(u) {
            // Members of W are adjacent to the rest of W, so any v covering
            // the remainder is already a neighbour.
            continue;
        }
        // Partners v must be adjacent to every member of W that u misses.
        let mut partners = g.full_set();
        for x in w.iter().filter(|&x| !g.has_edge(u, x)) {
            partners.intersect_with(g.neighbors(x));
        }
        partners.difference_with(g.neighbors(u));
        partners.difference_with(&w_bits);
        out.extend(partners.ones().filter(|&v| v > u).map(|v| (u, v)));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectionStep {
    pub clique: VertexSet,
    pub false_edges: Vec<Edge>,
}

/// The chain `G_0 = G, G_1 = G_0 | W_1, ..., G_r`.
///
/// Only the per-step false edges are stored; intermediate graphs are rebuilt
/// on request.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionTrace {
    base: Graph,
    steps: Vec<ProjectionStep>,
    current: Graph,
}

impl ProjectionTrace {
    pub fn new(base: Graph) -> Self {
        Self {
            current: base.clone(),
            base,
            steps: Vec::new(),
        }
    }

    pub fn from_cliques(base: &Graph, cliques: &[VertexSet]) -> Result<Self> {
        let mut trace = Self::new(base.clone());
        for w in cliques {
            trace.push(w.clone())?;
        }
        Ok(trace)
    }

    /// Appends `G_{r+1} = G_r | w`. `w` must be a clique of the current graph
    /// and differ from every earlier `W_t`.
    pub fn push(&mut self, w: VertexSet) -> Result<&ProjectionStep> {
        if self.steps.iter().any(|s| s.clique == w) {
            return Err(Error::DuplicateClique(w.as_slice().to_vec()));
        }
        let (next, false_edges) = clique_project(&self.current, &w)?;
        self.current = next;
        self.steps.push(ProjectionStep {
            clique: w,
            false_edges,
        });
        Ok(self.steps.last().unwrap())
    }

    /// Value-semantic variant of [`push`](Self::push).
    pub fn extend_trace(&self, w: VertexSet) -> Result<Self> {
        let mut t = self.clone();
        t.push(w)?;
        Ok(t)
    }

    /// Drops the last step.
    pub fn pop(&mut self) -> Option<ProjectionStep> {
        let step = self.steps.pop()?;
        self.current = self.graph_at(self.steps.len());
        Some(step)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn current(&self) -> &Graph {
        &self.current
    }

    pub fn steps(&self) -> &[ProjectionStep] {
        &self.steps
    }

    /// `W_t` for `t` in `1..=r`.
    pub fn clique(&self, t: usize) -> &VertexSet {
        &self.steps[t - 1].clique
    }

    pub fn cliques(&self) -> Vec<VertexSet> {
        self.steps.iter().map(|s| s.clique.clone()).collect()
    }

    /// `G_t` for `t` in `0..=r`.
    pub fn graph_at(&self, t: usize) -> Graph {
        if t == self.steps.len() {
            return self.current.clone();
        }
        let added: Vec<Edge> = self.steps[..t]
            .iter()
            .flat_map(|s| s.false_edges.iter().copied())
            .collect();
        self.base
            .with_edges(&added)
            .expect("trace edges are in range")
    }

    /// All of `G_0, ..., G_r`.
    pub fn graphs(&self) -> Vec<Graph> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        let mut g = self.base.clone();
        out.push(g.clone());
        for s in &self.steps {
            g = g
                .with_edges(&s.false_edges)
                .expect("trace edges are in range");
            out.push(g.clone());
        }
        out
    }

    /// The trace restricted to its first `t` steps.
    pub fn truncated(&self, t: usize) -> Result<Self> {
        if t > self.steps.len() {
            return Err(Error::StepOutOfRange {
                index: t,
                len: self.steps.len(),
            });
        }
        Ok(Self {
            base: self.base.clone(),
            steps: self.steps[..t].to_vec(),
            current: self.graph_at(t),
        })
    }

    pub fn to_record(&self) -> TraceRecord {
        TraceRecord {
            n: self.base.vertex_count(),
            steps: self.steps.clone(),
        }
    }

    /// Replays a serialized trace on `base`, checking the recorded false
    /// edges against the recomputed ones.
    pub fn from_record(base: &Graph, record: &TraceRecord) -> Result<Self> {
        if record.n != base.vertex_count() {
            return Err(Error::LengthMismatch {
                expected: base.vertex_count(),
                got: record.n,
            });
        }
        let mut trace = Self::new(base.clone());
        for step in &record.steps {
            let got = trace.push(step.clique.clone())?;
            if !step.false_edges.is_empty() && got.false_edges != step.false_edges {
                return Err(Error::InvalidWitness(format!(
                    "recorded false edges of clique {} do not match the projection",
                    step.clique
                )));
            }
        }
        Ok(trace)
    }
}

/// Serialized form of a trace: ordered cliques with their false edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub n: usize,
    pub steps: Vec<ProjectionStep>,
}

/// An edge `uv` is projectable if some maximum stable set meets `{u, v}`.
pub fn is_projectable_edge(g: &Graph, u: usize, v: usize) -> Result<bool> {
    if !g.has_edge(u, v) {
        return Err(Error::NotAnEdge { u, v });
    }
    let unit = WeightVector::unit(g.vertex_count());
    let alpha = solve_constrained(&ConstrainedMwssQuery::new(g, unit.clone()))?.best_value;
    for x in [u, v] {
        let with_x = solve_constrained(
            &ConstrainedMwssQuery::new(g, unit.clone()).cover(VertexSet::singleton(x)),
        )?;
        if with_x.best_value == alpha {
            return Ok(true);
        }
    }
    Ok(false)
}
