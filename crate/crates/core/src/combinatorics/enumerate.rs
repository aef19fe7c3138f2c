//! Exhaustive stable-set enumeration, the brute-force oracle behind the
//! validity and face-dimension checks.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

pub const DEFAULT_ENUMERATION_LIMIT: usize = 25;

/// Iterator over every stable set of a graph, `∅` first.
pub struct StableSets<'g> {
    g: &'g Graph,
    // Depth-first stack of chosen vertices; `next_start` is the smallest
    // vertex the next extension may use.
    stack: Vec<usize>,
    next_start: usize,
    started: bool,
}

pub fn enumerate_stable_sets(g: &Graph, max_n: usize) -> Result<StableSets<'_>> {
    if g.vertex_count() > max_n {
        return Err(Error::TooLarge {
            n: g.vertex_count(),
            limit: max_n,
        });
    }
    Ok(StableSets {
        g,
        stack: Vec::new(),
        next_start: 0,
        started: false,
    })
}

impl StableSets<'_> {
    fn compatible(&self, v: usize) -> bool {
        self.stack.iter().all(|&u| !self.g.has_edge(u, v))
    }
}

impl Iterator for StableSets<'_> {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        if !self.started {
            self.started = true;
            return Some(VertexSet::new());
        }
        let n = self.g.vertex_count();
        loop {
            let start = self.next_start;
            if let Some(v) = (start..n).find(|&v| self.compatible(v)) {
                self.stack.push(v);
                self.next_start = v + 1;
                return Some(self.stack.iter().copied().collect());
            }
            // Backtrack: replace the top vertex by a later one.
            let top = self.stack.pop()?;
            self.next_start = top + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_has_four() {
        let sets: Vec<_> = enumerate_stable_sets(&Graph::complete(3), 25)
            .unwrap()
            .collect();
        assert_eq!(
            sets,
            vec![
                VertexSet::new(),
                VertexSet::singleton(0),
                VertexSet::singleton(1),
                VertexSet::singleton(2)
            ]
        );
    }

    #[test]
    fn empty_graph_has_all_subsets() {
        for k in 0..7 {
            let sets: Vec<_> = enumerate_stable_sets(&Graph::empty(k), 25)
                .unwrap()
                .collect();
            assert_eq!(sets.len(), 1 << k);
            let unique: std::collections::BTreeSet<_> = sets.into_iter().collect();
            assert_eq!(unique.len(), 1 << k);
        }
    }

    #[test]
    fn five_cycle_has_eleven() {
        let g = Graph::cycle(5);
        let sets: Vec<_> = enumerate_stable_sets(&g, 25).unwrap().collect();
        assert_eq!(sets.len(), 11);
        assert!(sets.iter().all(|s| g.is_stable(s)));
    }

    #[test]
    fn refuses_large_graphs() {
        assert_eq!(
            enumerate_stable_sets(&Graph::empty(30), 25).err(),
            Some(Error::TooLarge { n: 30, limit: 25 })
        );
    }
}
