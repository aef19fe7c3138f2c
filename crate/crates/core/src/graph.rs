//! Undirected simple graphs with bitset adjacency.
//!
//! Vertices are dense indices `0..n`. Graphs are immutable once built; the
//! operations that "change" a graph (projection, complement, induced
//! subgraphs) return a new value.

use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A set of vertex indices, kept sorted and free of duplicates.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new() -> Self {
        Self(Vec::new())
    }

    pub fn singleton(v: usize) -> Self {
        Self(vec![v])
    }

    pub fn from_bitset(bits: &FixedBitSet) -> Self {
        Self(bits.ones().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn to_bitset(&self, n: usize) -> FixedBitSet {
        let mut bits = FixedBitSet::with_capacity(n);
        for &v in &self.0 {
            bits.insert(v);
        }
        bits
    }

    pub fn insert(&mut self, v: usize) -> bool {
        match self.0.binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.0.insert(pos, v);
                true
            }
        }
    }

    pub fn remove(&mut self, v: usize) -> bool {
        match self.0.binary_search(&v) {
            Ok(pos) => {
                self.0.remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.iter().all(|&v| other.contains(v))
    }

    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.0.iter().filter(|&&v| other.contains(v)).count()
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.intersection_len(other) == 0
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.iter().chain(other.iter()).collect()
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        self.iter().filter(|&v| !other.contains(v)).collect()
    }

    /// Sum of `point` over the members, written `x̄_W` in cutting-plane terms.
    pub fn weight(&self, point: &[f64]) -> f64 {
        self.0.iter().map(|&v| point[v]).sum()
    }

    pub fn max_vertex(&self) -> Option<usize> {
        self.0.last().copied()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut v: Vec<usize> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Self(v)
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        v.into_iter().collect()
    }
}

impl<const N: usize> From<[usize; N]> for VertexSet {
    fn from(v: [usize; N]) -> Self {
        v.into_iter().collect()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Integer vertex weights `c_v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVector(Vec<i64>);

impl WeightVector {
    pub fn new(weights: Vec<i64>) -> Self {
        Self(weights)
    }

    pub fn unit(n: usize) -> Self {
        Self(vec![1; n])
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn get(&self, v: usize) -> i64 {
        self.0[v]
    }

    pub fn set(&mut self, v: usize, w: i64) {
        self.0[v] = w;
    }

    pub fn total(&self, set: &VertexSet) -> i64 {
        set.iter().map(|v| self.0[v]).sum()
    }

    pub fn check_len(&self, n: usize) -> Result<()> {
        if self.0.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: self.0.len(),
            });
        }
        Ok(())
    }
}

/// Old-to-new vertex correspondence produced by [`Graph::induced_subgraph`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexMap {
    old_to_new: Vec<Option<usize>>,
    new_to_old: Vec<usize>,
}

impl IndexMap {
    pub fn to_new(&self, old: usize) -> Option<usize> {
        self.old_to_new.get(old).copied().flatten()
    }

    pub fn to_old(&self, new: usize) -> usize {
        self.new_to_old[new]
    }

    pub fn len(&self) -> usize {
        self.new_to_old.len()
    }

    pub fn is_empty(&self) -> bool {
        self.new_to_old.is_empty()
    }
}

#[derive(Clone)]
pub struct Graph {
    n: usize,
    m: usize,
    adj: Vec<FixedBitSet>,
    labels: Vec<usize>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("m", &self.m)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// Graph on `n` vertices without edges.
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            m: 0,
            adj: vec![FixedBitSet::with_capacity(n); n],
            labels: (1..=n).collect(),
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut adj = vec![FixedBitSet::with_capacity(n); n];
        for (v, row) in adj.iter_mut().enumerate() {
            row.insert_range(..);
            row.set(v, false);
        }
        Self {
            n,
            m: n * n.saturating_sub(1) / 2,
            adj,
            labels: (1..=n).collect(),
        }
    }

    pub fn cycle(n: usize) -> Self {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_edges(n, edges).expect("cycle edges are in range")
    }

    /// Builds a graph from 0-based edge pairs. Repeated pairs (in either
    /// orientation) collapse into one edge.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(n);
        for (u, v) in edges {
            g.insert_edge(u, v)?;
        }
        Ok(g)
    }

    fn insert_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        for x in [u, v] {
            if x >= self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: x,
                    n: self.n,
                });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if self.adj[u].contains(v) {
            return Ok(false);
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        self.m += 1;
        Ok(true)
    }

    /// Returns a copy with the given edges added. Pairs that are already
    /// edges are ignored.
    pub fn with_edges<'a, I>(&self, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a (usize, usize)>,
    {
        let mut g = self.clone();
        for &(u, v) in edges {
            g.insert_edge(u, v)?;
        }
        Ok(g)
    }

    /// Replaces the reporting labels (1-based DIMACS names by default).
    pub fn with_labels(mut self, labels: Vec<usize>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: labels.len(),
            });
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn label(&self, v: usize) -> usize {
        self.labels[v]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn neighbors(&self, v: usize) -> &FixedBitSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones(..)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].contains(v)
    }

    /// Edge density `2m / (n (n - 1))`.
    pub fn density(&self) -> f64 {
        if self.n < 2 {
            return 0.0;
        }
        2.0 * self.m as f64 / (self.n as f64 * (self.n - 1) as f64)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.adj[u]
                .ones()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn check_vertex_set(&self, set: &VertexSet) -> Result<()> {
        match set.max_vertex() {
            Some(v) if v >= self.n => Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            }),
            _ => Ok(()),
        }
    }

    pub fn induced_subgraph(&self, keep: &VertexSet) -> Result<(Graph, IndexMap)> {
        if keep.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        self.check_vertex_set(keep)?;
        let mut old_to_new = vec![None; self.n];
        let new_to_old: Vec<usize> = keep.iter().collect();
        for (new, &old) in new_to_old.iter().enumerate() {
            old_to_new[old] = Some(new);
        }
        let mut sub = Graph::empty(new_to_old.len());
        for (new_u, &old_u) in new_to_old.iter().enumerate() {
            for old_v in self.adj[old_u].ones() {
                if let Some(new_v) = old_to_new[old_v] {
                    if new_v > new_u {
                        sub.insert_edge(new_u, new_v)?;
                    }
                }
            }
        }
        sub.labels = new_to_old.iter().map(|&v| self.labels[v]).collect();
        Ok((
            sub,
            IndexMap {
                old_to_new,
                new_to_old,
            },
        ))
    }

    pub fn complement(&self) -> Graph {
        let mut adj = Vec::with_capacity(self.n);
        for (v, row) in self.adj.iter().enumerate() {
            let mut c = row.clone();
            c.toggle_range(..);
            c.set(v, false);
            adj.push(c);
        }
        let total = self.n * self.n.saturating_sub(1) / 2;
        Graph {
            n: self.n,
            m: total - self.m,
            adj,
            labels: self.labels.clone(),
        }
    }

    pub fn is_clique(&self, set: &VertexSet) -> bool {
        let s = set.as_slice();
        s.iter()
            .enumerate()
            .all(|(i, &u)| s[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    pub fn is_stable(&self, set: &VertexSet) -> bool {
        let s = set.as_slice();
        s.iter()
            .enumerate()
            .all(|(i, &u)| s[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    /// True if no vertex outside `set` is adjacent to every member.
    pub fn is_maximal_clique(&self, set: &VertexSet) -> bool {
        if !self.is_clique(set) {
            return false;
        }
        let mut common = FixedBitSet::with_capacity(self.n);
        common.insert_range(..);
        for v in set.iter() {
            common.intersect_with(&self.adj[v]);
        }
        common.count_ones(..) == 0
    }

    /// Bitset of all vertices.
    pub fn full_set(&self) -> FixedBitSet {
        let mut b = FixedBitSet::with_capacity(self.n);
        b.insert_range(..);
        b
    }
}
