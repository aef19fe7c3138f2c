//! Exact maximum-weight stable set by branch and bound.
//!
//! The bound is a greedy partition of the candidate set into cliques of the
//! graph (a coloring of the complement); a stable set takes at most one vertex
//! per clique, so the sum of per-clique maxima bounds any extension. Cover
//! constraints ("exactly one vertex of this set") are resolved first by
//! branching over the members of the most constrained set.

use std::time::{Duration, Instant};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet, WeightVector};

pub const DEFAULT_TIME_BUDGET: Duration = Duration::from_secs(1);

#[derive(Clone, Debug)]
pub struct ConstrainedMwssQuery<'g> {
    pub graph: &'g Graph,
    pub weights: WeightVector,
    /// Each set must contain exactly one chosen vertex.
    pub cover_cliques: Vec<VertexSet>,
    /// No chosen vertex may lie in these sets.
    pub avoid_cliques: Vec<VertexSet>,
    pub time_budget: Option<Duration>,
}

impl<'g> ConstrainedMwssQuery<'g> {
    pub fn new(graph: &'g Graph, weights: WeightVector) -> Self {
        Self {
            graph,
            weights,
            cover_cliques: Vec::new(),
            avoid_cliques: Vec::new(),
            time_budget: None,
        }
    }

    pub fn cover(mut self, set: VertexSet) -> Self {
        self.cover_cliques.push(set);
        self
    }

    pub fn avoid(mut self, set: VertexSet) -> Self {
        self.avoid_cliques.push(set);
        self
    }

    pub fn budget(mut self, budget: Option<Duration>) -> Self {
        self.time_budget = budget;
        self
    }

    fn validate(&self) -> Result<()> {
        self.weights.check_len(self.graph.vertex_count())?;
        for set in self.cover_cliques.iter().chain(&self.avoid_cliques) {
            self.graph.check_vertex_set(set)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MwssResult {
    pub best_set: VertexSet,
    pub best_value: i64,
    pub proven_optimal: bool,
    pub infeasible: bool,
}

impl MwssResult {
    /// The optimum, or `Error::Timeout` if optimality was not proven.
    pub fn exact_value(&self) -> Result<i64> {
        if self.proven_optimal {
            Ok(self.best_value)
        } else {
            Err(Error::Timeout)
        }
    }
}

pub fn max_weight_stable_set(
    g: &Graph,
    weights: &WeightVector,
    budget: Option<Duration>,
) -> Result<MwssResult> {
    solve_constrained(&ConstrainedMwssQuery::new(g, weights.clone()).budget(budget))
}

/// Exact `α(G)` without a time limit.
pub fn stability_number(g: &Graph) -> usize {
    let r = max_weight_stable_set(g, &WeightVector::unit(g.vertex_count()), None)
        .expect("unit weights are valid");
    r.best_value as usize
}

pub fn solve_constrained(q: &ConstrainedMwssQuery<'_>) -> Result<MwssResult> {
    q.validate()?;
    let g = q.graph;
    let n = g.vertex_count();
    let w = q.weights.as_slice();

    // Relabel so that bitset order is the preferred branching order: heavy
    // vertices first, then low degree.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        w[b].cmp(&w[a])
            .then(g.degree(a).cmp(&g.degree(b)))
            .then(a.cmp(&b))
    });
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let adj: Vec<FixedBitSet> = order
        .iter()
        .map(|&v| {
            let mut row = FixedBitSet::with_capacity(n);
            for u in g.neighbors(v).ones() {
                row.insert(pos[u]);
            }
            row
        })
        .collect();
    let weight: Vec<i64> = order.iter().map(|&v| w[v]).collect();
    let to_bits = |set: &VertexSet| {
        let mut b = FixedBitSet::with_capacity(n);
        for v in set.iter() {
            b.insert(pos[v]);
        }
        b
    };

    let mut candidates = FixedBitSet::with_capacity(n);
    candidates.insert_range(..);
    for a in &q.avoid_cliques {
        candidates.difference_with(&to_bits(a));
    }
    let covers: Vec<FixedBitSet> = q.cover_cliques.iter().map(to_bits).collect();
    let mut positive = FixedBitSet::with_capacity(n);
    positive.extend((0..n).filter(|&v| weight[v] > 0));

    let mut search = Search {
        adj: &adj,
        weight: &weight,
        positive,
        covers: &covers,
        deadline: q.time_budget.map(|b| Instant::now() + b),
        nodes: 0,
        timed_out: false,
        best: None,
        current: Vec::new(),
    };
    let chosen = FixedBitSet::with_capacity(n);
    search.cover_step(candidates, chosen, 0);

    let proven_optimal = !search.timed_out;
    Ok(match search.best {
        Some((value, set)) => MwssResult {
            best_set: set.into_iter().map(|i| order[i]).collect(),
            best_value: value,
            proven_optimal,
            infeasible: false,
        },
        None => MwssResult {
            best_set: VertexSet::new(),
            best_value: 0,
            proven_optimal,
            infeasible: proven_optimal,
        },
    })
}

struct Search<'a> {
    adj: &'a [FixedBitSet],
    weight: &'a [i64],
    positive: FixedBitSet,
    covers: &'a [FixedBitSet],
    deadline: Option<Instant>,
    nodes: u64,
    timed_out: bool,
    best: Option<(i64, Vec<usize>)>,
    current: Vec<usize>,
}

impl Search<'_> {
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.timed_out {
            return true;
        }
        if self.nodes.is_multiple_of(256) {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    self.timed_out = true;
                }
            }
        }
        self.timed_out
    }

    fn best_value(&self) -> Option<i64> {
        self.best.as_ref().map(|b| b.0)
    }

    fn record(&mut self, value: i64) {
        if self.best_value().is_none_or(|b| value > b) {
            self.best = Some((value, self.current.clone()));
        }
    }

    /// Upper bound on the positive weight any stable subset of `p` can add.
    fn cover_bound(&self, p: &FixedBitSet) -> i64 {
        let mut q = p.clone();
        q.intersect_with(&self.positive);
        let mut total = 0;
        while let Some(first) = q.minimum() {
            let mut cand = q.clone();
            let mut best = 0;
            let mut v = Some(first);
            while let Some(u) = v {
                best = best.max(self.weight[u]);
                q.set(u, false);
                cand.intersect_with(&self.adj[u]);
                v = cand.minimum();
            }
            total += best;
        }
        total
    }

    fn cover_step(&mut self, p: FixedBitSet, chosen: FixedBitSet, value: i64) {
        if self.tick() {
            return;
        }
        // Pick the unsatisfied cover set with the fewest available members.
        let mut pick: Option<(usize, FixedBitSet)> = None;
        let mut p = p;
        for (j, cov) in self.covers.iter().enumerate() {
            let hit = chosen.intersection_count(cov);
            if hit > 1 {
                return;
            }
            if hit == 1 {
                p.difference_with(cov);
                continue;
            }
            let mut avail = cov.clone();
            avail.intersect_with(&p);
            let count = avail.count_ones(..);
            if count == 0 {
                return;
            }
            if pick.as_ref().is_none_or(|(_, a)| count < a.count_ones(..)) {
                pick = Some((j, avail));
            }
        }
        let Some((j, avail)) = pick else {
            let mut free = p;
            free.intersect_with(&self.positive);
            self.expand(free, value);
            return;
        };
        if let Some(best) = self.best_value() {
            if value + self.cover_bound(&p) <= best {
                return;
            }
        }
        let mut members: Vec<usize> = avail.ones().collect();
        members.sort_by(|&a, &b| self.weight[b].cmp(&self.weight[a]).then(a.cmp(&b)));
        for v in members {
            let mut np = p.clone();
            np.difference_with(&self.adj[v]);
            np.difference_with(&self.covers[j]);
            np.set(v, false);
            let mut nc = chosen.clone();
            nc.insert(v);
            self.current.push(v);
            self.cover_step(np, nc, value + self.weight[v]);
            self.current.pop();
            if self.timed_out {
                return;
            }
        }
    }

    /// Unconstrained search over `p`, which holds positive-weight vertices only.
    fn expand(&mut self, mut p: FixedBitSet, value: i64) {
        if self.tick() {
            return;
        }
        self.record(value);
        if p.is_clear() {
            return;
        }
        let (order, bounds) = self.colour_order(&p);
        for i in (0..order.len()).rev() {
            let best = self.best_value().unwrap_or(i64::MIN);
            if value + bounds[i] <= best {
                return;
            }
            let v = order[i];
            let mut np = p.clone();
            np.difference_with(&self.adj[v]);
            np.set(v, false);
            self.current.push(v);
            self.expand(np, value + self.weight[v]);
            self.current.pop();
            if self.timed_out {
                return;
            }
            p.set(v, false);
        }
    }

    /// Orders `p` class by class (each class a clique of the graph); `bounds[i]`
    /// bounds the weight of a stable subset of `order[..=i]`.
    fn colour_order(&self, p: &FixedBitSet) -> (Vec<usize>, Vec<i64>) {
        let mut q = p.clone();
        let mut order = Vec::with_capacity(p.count_ones(..));
        let mut bounds = Vec::with_capacity(order.capacity());
        let mut base = 0;
        while let Some(first) = q.minimum() {
            let mut class = Vec::new();
            let mut cand = q.clone();
            let mut v = Some(first);
            while let Some(u) = v {
                class.push(u);
                q.set(u, false);
                cand.intersect_with(&self.adj[u]);
                v = cand.minimum();
            }
            class.sort_by_key(|&u| self.weight[u]);
            for &u in &class {
                order.push(u);
                bounds.push(base + self.weight[u]);
            }
            base += self.weight[*class.last().unwrap()];
        }
        (order, bounds)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::enumerate::enumerate_stable_sets;
    use crate::fixtures::{figure1_graph, figure2_cliques, labels};
    use crate::projection::ProjectionTrace;

    fn brute(g: &Graph, w: &[i64]) -> i64 {
        enumerate_stable_sets(g, 25)
            .unwrap()
            .map(|s| s.iter().map(|v| w[v]).sum::<i64>())
            .max()
            .unwrap()
    }

    #[test]
    fn triangle_and_odd_hole() {
        assert_eq!(stability_number(&Graph::complete(3)), 1);
        assert_eq!(stability_number(&Graph::cycle(5)), 2);
        assert_eq!(stability_number(&Graph::empty(4)), 4);
    }

    #[test]
    fn figure1_alpha_matches_enumeration() {
        let g = figure1_graph();
        let r = max_weight_stable_set(&g, &WeightVector::unit(8), None).unwrap();
        assert_eq!(r.best_value, 3);
        assert_eq!(brute(&g, &[1; 8]), 3);
        assert!(g.is_stable(&r.best_set));
        assert!(r.proven_optimal);
    }

    #[test]
    fn zero_and_negative_weights_excluded() {
        let g = Graph::empty(3);
        let r = max_weight_stable_set(&g, &WeightVector::new(vec![2, 0, -1]), None).unwrap();
        assert_eq!(r.best_value, 2);
        assert_eq!(r.best_set, VertexSet::singleton(0));
    }

    #[test]
    fn strengthened_lambda_three_subproblem() {
        // max x_{W4} over stable sets of G covering W1, W2 once and avoiding W3.
        let g = figure1_graph();
        let cl = figure2_cliques();
        let mut w = vec![0; 8];
        for v in labels(&[2, 5, 6, 7, 8]).iter() {
            w[v] = 1;
        }
        let q = ConstrainedMwssQuery::new(&g, WeightVector::new(w))
            .cover(cl[0].clone())
            .cover(cl[1].clone())
            .avoid(cl[2].clone());
        let r = solve_constrained(&q).unwrap();
        assert!(!r.infeasible);
        assert_eq!(r.best_value, 0);
        assert_eq!(r.best_value - 1, -1);
    }

    #[test]
    fn strengthened_lambda_two_subproblem() {
        // f_2 = x_{2,6,7,8} - x_{1,4} + 1, cover W1, avoid W2; lambda = max f_2 - 1.
        let g = figure1_graph();
        let cl = figure2_cliques();
        let mut w = vec![0; 8];
        for v in labels(&[2, 6, 7, 8]).iter() {
            w[v] = 1;
        }
        for v in labels(&[1, 4]).iter() {
            w[v] = -1;
        }
        let q = ConstrainedMwssQuery::new(&g, WeightVector::new(w))
            .cover(cl[0].clone())
            .avoid(cl[1].clone());
        let r = solve_constrained(&q).unwrap();
        assert_eq!(r.best_value + 1 - 1, 2);
    }

    #[test]
    fn infeasible_cover_reports_zero() {
        let g = Graph::complete(3);
        let q = ConstrainedMwssQuery::new(&g, WeightVector::unit(3))
            .cover(VertexSet::from([0, 1]))
            .avoid(VertexSet::from([0, 1, 2]));
        let r = solve_constrained(&q).unwrap();
        assert!(r.infeasible);
        assert_eq!(r.best_value, 0);
        assert!(r.proven_optimal);
    }

    #[test]
    fn cover_enforces_exactly_one_on_non_cliques() {
        // {0, 2} is not a clique of the path 0-1-2; covering it once forbids {0, 2}.
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let q = ConstrainedMwssQuery::new(&g, WeightVector::unit(3)).cover(VertexSet::from([0, 2]));
        let r = solve_constrained(&q).unwrap();
        assert_eq!(r.best_value, 1);
    }

    #[test]
    fn forced_negative_vertex() {
        let g = Graph::empty(2);
        let q = ConstrainedMwssQuery::new(&g, WeightVector::new(vec![-3, 2]))
            .cover(VertexSet::singleton(0));
        let r = solve_constrained(&q).unwrap();
        assert_eq!(r.best_value, -1);
        assert_eq!(r.best_set, VertexSet::from([0, 1]));
    }

    #[test]
    fn feasible_region_is_stable_in_projection() {
        // Points covering W1..W3 exactly once are stable in G_3.
        let g = figure1_graph();
        let cl = figure2_cliques();
        let trace = ProjectionTrace::from_cliques(&g, &cl).unwrap();
        let w = WeightVector::unit(8);
        let q = ConstrainedMwssQuery::new(&g, w)
            .cover(cl[0].clone())
            .cover(cl[1].clone())
            .cover(cl[2].clone());
        let r = solve_constrained(&q).unwrap();
        assert!(trace.current().is_stable(&r.best_set));
    }

    #[test]
    fn timeout_is_not_proven() {
        let g = crate::random::gnp(90, 0.1, 3);
        let r = max_weight_stable_set(&g, &WeightVector::unit(90), Some(Duration::ZERO)).unwrap();
        assert!(!r.proven_optimal);
        assert!(!r.infeasible);
        assert_eq!(r.exact_value(), Err(Error::Timeout));
    }

    #[test]
    fn rejects_bad_lengths() {
        let g = Graph::empty(3);
        assert!(max_weight_stable_set(&g, &WeightVector::unit(2), None).is_err());
    }
}
