//! Separation of fractional points by projecting cliques until a violated
//! clique appears and lifting it back to `G`.

use std::collections::{HashSet, VecDeque};
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::combinatorics::cliques::{
    by_value_desc, enumerate_cliques_bounded, greedy_cliques_both, grow_by_value,
    CLIQUE_KEEP_THRESHOLD,
};
use crate::combinatorics::mwss::DEFAULT_TIME_BUDGET;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::lifting::{lift, LiftProcedure, LiftedCut};
use crate::projection::{false_edges, ProjectionTrace};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeparationParams {
    pub min_violation: f64,
    pub min_depth: usize,
    pub max_depth: usize,
    pub max_iter: usize,
    pub max_ncuts: usize,
    /// Every `tomita_period`-th projection looks for a violated clique by
    /// bounded enumeration instead of the greedy rule.
    pub tomita_period: usize,
    pub tomita_limit: usize,
    pub clique_keep_threshold: f64,
    #[serde(with = "seconds")]
    pub lift_time_budget: Duration,
}

mod seconds {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(d.as_secs_f64())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        let secs = f64::deserialize(d)?;
        Duration::try_from_secs_f64(secs).map_err(serde::de::Error::custom)
    }
}

impl Default for SeparationParams {
    fn default() -> Self {
        Self {
            min_violation: 0.03,
            min_depth: 10,
            max_depth: 20,
            max_iter: 50,
            max_ncuts: 20,
            tomita_period: 10,
            tomita_limit: 1000,
            clique_keep_threshold: CLIQUE_KEEP_THRESHOLD,
            lift_time_budget: DEFAULT_TIME_BUDGET,
        }
    }
}

impl SeparationParams {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidParams(msg.to_string()));
        if !(0.0..=1.0).contains(&self.min_violation) {
            return bad("min_violation must lie in [0, 1]");
        }
        if !(0.0..=1.0).contains(&self.clique_keep_threshold) {
            return bad("clique_keep_threshold must lie in [0, 1]");
        }
        if self.min_depth > self.max_depth {
            return bad("min_depth exceeds max_depth");
        }
        if [
            self.max_depth,
            self.max_iter,
            self.max_ncuts,
            self.tomita_period,
            self.tomita_limit,
        ]
        .contains(&0)
        {
            return bad("depth, iteration, cut and enumeration counts must be positive");
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SeparationOutcome {
    pub cuts: Vec<LiftedCut>,
    pub iterations_used: usize,
    pub projections_performed: usize,
    pub failed_iterations: usize,
}

/// Starting cliques for [`sep_for_stab`], alternating between the two greedy
/// heuristics, together with the pool cliques that are already violated.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CliquePool {
    pub pool: Vec<VertexSet>,
    pub violated: Vec<VertexSet>,
}

pub fn build_clique_pool(
    g: &Graph,
    point: &[f64],
    params: &SeparationParams,
) -> Result<CliquePool> {
    params.validate()?;
    check_point(g, point)?;
    let (by_weight, by_cover) = greedy_cliques_both(g, point, params.clique_keep_threshold);
    let mut pool: Vec<VertexSet> = Vec::with_capacity(by_weight.len() + by_cover.len());
    let (mut a, mut b) = (by_weight.into_iter(), by_cover.into_iter());
    loop {
        let (x, y) = (a.next(), b.next());
        if x.is_none() && y.is_none() {
            break;
        }
        for c in [x, y].into_iter().flatten() {
            if !pool.contains(&c) {
                pool.push(c);
            }
        }
    }
    let violated = pool
        .iter()
        .filter(|c| c.weight(point) > 1.0 + params.min_violation)
        .cloned()
        .collect();
    Ok(CliquePool { pool, violated })
}

fn check_point(g: &Graph, point: &[f64]) -> Result<()> {
    if point.len() != g.vertex_count() {
        return Err(Error::LengthMismatch {
            expected: g.vertex_count(),
            got: point.len(),
        });
    }
    if point.iter().any(|x| !(-1e-9..=1.0 + 1e-9).contains(x)) {
        return Err(Error::InvalidParams("point must lie in [0, 1]^n".into()));
    }
    Ok(())
}

/// Runs the projection walk from each pool clique in turn and lifts every
/// violated clique met on the way.
///
/// Pool cliques are consumed front to back; a clique equal to an earlier start
/// is skipped. Cuts are deduplicated and capped at `max_ncuts`.
pub fn sep_for_stab(
    g: &Graph,
    point: &[f64],
    pool: &[VertexSet],
    params: &SeparationParams,
    procedure: LiftProcedure,
) -> Result<SeparationOutcome> {
    params.validate()?;
    check_point(g, point)?;
    for w in pool {
        g.check_vertex_set(w)?;
        if !g.is_clique(w) {
            return Err(Error::NotAClique(w.as_slice().to_vec()));
        }
    }
    let mut out = SeparationOutcome::default();
    let mut queue: VecDeque<&VertexSet> = pool.iter().collect();
    let mut started: HashSet<&VertexSet> = HashSet::new();
    let mut seen_cuts = HashSet::new();
    while out.iterations_used < params.max_iter && out.cuts.len() < params.max_ncuts {
        let Some(start) = queue.pop_front() else {
            break;
        };
        if !started.insert(start) {
            continue;
        }
        out.iterations_used += 1;
        let walk = Walk::run(
            g,
            point,
            start.clone(),
            params,
            &mut out.projections_performed,
        );
        if walk.candidates.is_empty() {
            out.failed_iterations += 1;
            continue;
        }
        let mut lifted_any = false;
        for (t, seed) in &walk.candidates {
            match lift(
                procedure,
                &walk.trace,
                seed,
                *t,
                Some(params.lift_time_budget),
            ) {
                Ok(cut) => {
                    lifted_any = true;
                    if cut.inequality.violation(point) > params.min_violation
                        && seen_cuts.insert(cut.inequality.clone())
                        && out.cuts.len() < params.max_ncuts
                    {
                        out.cuts.push(cut);
                    }
                }
                Err(Error::Timeout) => {}
                Err(e) => return Err(e),
            }
        }
        if !lifted_any {
            out.failed_iterations += 1;
        }
    }
    Ok(out)
}

struct Walk {
    trace: ProjectionTrace,
    /// `(t, W)` for every violated clique `W` of `G_t` chosen by the walk.
    candidates: Vec<(usize, VertexSet)>,
}

impl Walk {
    fn run(
        g: &Graph,
        point: &[f64],
        start: VertexSet,
        params: &SeparationParams,
        projections: &mut usize,
    ) -> Walk {
        let threshold = 1.0 + params.min_violation;
        let mut trace = ProjectionTrace::new(g.clone());
        let mut candidates = Vec::new();
        let mut tried: HashSet<VertexSet> = HashSet::new();
        let mut used = start.clone();
        let mut next = Some(start);
        // Each pass either projects or discards a distinct clique; the cap
        // only matters when the next-clique rule keeps failing.
        let mut attempts = 0;
        let max_attempts = 4 * (params.max_depth + 1);
        while let Some(w) = next.take() {
            let t = trace.len();
            let keep_going = w.weight(point) <= threshold || t <= params.min_depth;
            if !keep_going || t > params.max_depth || attempts >= max_attempts {
                if w.weight(point) > threshold {
                    candidates.push((t, w));
                }
                break;
            }
            attempts += 1;
            tried.insert(w.clone());
            // Recorded before the repair below, so a violated clique whose
            // projection adds nothing is still lifted.
            if w.weight(point) > threshold {
                candidates.push((t, w.clone()));
            }
            if let Some(w) = reduce_until_false_edge(trace.current(), w, point) {
                if trace.steps().iter().all(|s| s.clique != w) {
                    trace
                        .push(w.clone())
                        .expect("reduced clique is a clique of the current graph");
                    *projections += 1;
                    used = used.union(&w);
                }
            }
            if trace.is_empty() {
                break;
            }
            next = if projections.is_multiple_of(params.tomita_period) {
                tomita_clique(&trace, point, params, &tried)
            } else {
                None
            }
            .or_else(|| next_clique(&trace, point, &used, &tried));
        }
        Walk { trace, candidates }
    }
}

/// Drops minimum-`x̄` vertices from `w` until projecting it adds a false edge.
/// Returns `None` when even a two-vertex remainder adds nothing.
fn reduce_until_false_edge(g: &Graph, mut w: VertexSet, point: &[f64]) -> Option<VertexSet> {
    loop {
        if w.len() < 2 {
            return None;
        }
        if !false_edges(g, &w).expect("w is a clique of g").is_empty() {
            return Some(w);
        }
        if w.len() == 2 {
            return None;
        }
        let drop = w
            .iter()
            .min_by(|a, b| by_value_desc(point)(b, a))
            .expect("w is non-empty");
        w.remove(drop);
    }
}

fn tomita_clique(
    trace: &ProjectionTrace,
    point: &[f64],
    params: &SeparationParams,
    tried: &HashSet<VertexSet>,
) -> Option<VertexSet> {
    let found = enumerate_cliques_bounded(trace.current(), params.tomita_limit, point);
    found
        .best()
        .filter(|w| w.weight(point) > 1.0 + params.min_violation && !tried.contains(*w))
        .cloned()
}

/// A maximal clique of the current graph through a false edge of the last
/// step and, when possible, a vertex not used by earlier cliques.
fn next_clique(
    trace: &ProjectionTrace,
    point: &[f64],
    used: &VertexSet,
    tried: &HashSet<VertexSet>,
) -> Option<VertexSet> {
    let g = trace.current();
    let mut edges = trace.steps().last()?.false_edges.clone();
    edges.sort_by(|a, b| {
        let wa = point[a.0] + point[a.1];
        let wb = point[b.0] + point[b.1];
        wb.partial_cmp(&wa)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.cmp(b))
    });
    let mut order: Vec<usize> = (0..g.vertex_count())
        .filter(|&v| !used.contains(v))
        .collect();
    order.sort_by(by_value_desc(point));
    let mut fallback = None;
    for &(a, b) in &edges {
        for &c in &order {
            if c == a || c == b || !g.has_edge(a, c) || !g.has_edge(b, c) {
                continue;
            }
            let w = grow_by_value(g, &VertexSet::from([a, b, c]), point);
            if !tried.contains(&w) {
                return Some(w);
            }
        }
        if fallback.is_none() {
            let w = grow_by_value(g, &VertexSet::from([a, b]), point);
            if !tried.contains(&w) {
                fallback = Some(w);
            }
        }
    }
    fallback
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::stability_number;
    use crate::fixtures::{figure1_graph, wheel5};
    use crate::lifting::check_validity;

    #[test]
    fn default_params_valid() {
        SeparationParams::default().validate().unwrap();
        let bad = SeparationParams {
            min_depth: 30,
            ..Default::default()
        };
        assert!(matches!(bad.validate(), Err(Error::InvalidParams(_))));
        let zero = SeparationParams {
            max_ncuts: 0,
            ..Default::default()
        };
        assert!(zero.validate().is_err());
    }

    #[test]
    fn pool_examples() {
        let p = build_clique_pool(&Graph::complete(3), &[0.5; 3], &SeparationParams::default())
            .unwrap();
        assert_eq!(p.pool, vec![VertexSet::from([0, 1, 2])]);
        assert_eq!(p.violated, p.pool);

        let c5 = Graph::cycle(5);
        let p = build_clique_pool(&c5, &[0.5; 5], &SeparationParams::default()).unwrap();
        assert!(!p.pool.is_empty() && p.pool.iter().all(|c| c.len() == 2));
        assert!(p.violated.is_empty());

        let stable = [1.0, 0.0, 1.0, 0.0, 0.0];
        assert!(
            build_clique_pool(&c5, &stable, &SeparationParams::default())
                .unwrap()
                .violated
                .is_empty()
        );
    }

    #[test]
    fn integral_point_gives_nothing() {
        let g = figure1_graph();
        let mut point = vec![0.0; 8];
        // {4, 5, 6} in labels is a maximum stable set.
        for v in [3, 4, 5] {
            point[v] = 1.0;
        }
        assert_eq!(stability_number(&g), 3);
        let pool = build_clique_pool(&g, &point, &SeparationParams::default())
            .unwrap()
            .pool;
        for proc in [LiftProcedure::Basic, LiftProcedure::Strengthened] {
            let out = sep_for_stab(&g, &point, &pool, &SeparationParams::default(), proc).unwrap();
            assert!(out.cuts.is_empty());
        }
    }

    #[test]
    fn c5_half_point_is_cut() {
        let g = Graph::cycle(5);
        let point = [0.5; 5];
        let pool = build_clique_pool(&g, &point, &SeparationParams::default())
            .unwrap()
            .pool;
        for proc in [LiftProcedure::Basic, LiftProcedure::Strengthened] {
            let out = sep_for_stab(&g, &point, &pool, &SeparationParams::default(), proc).unwrap();
            assert!(!out.cuts.is_empty(), "{proc}");
            for cut in &out.cuts {
                assert!(check_validity(&g, &cut.inequality).unwrap().valid);
                assert!(cut.inequality.violation(&point) > 0.03);
            }
        }
    }

    #[test]
    fn wheel_point_and_cap() {
        let g = wheel5();
        let point = [0.5, 0.5, 0.5, 0.5, 0.5, 0.0];
        let pool = build_clique_pool(&g, &point, &SeparationParams::default())
            .unwrap()
            .pool;
        let params = SeparationParams {
            max_ncuts: 1,
            ..Default::default()
        };
        let out = sep_for_stab(&g, &point, &pool, &params, LiftProcedure::Strengthened).unwrap();
        assert_eq!(out.cuts.len(), 1);
        for cut in &out.cuts {
            assert!(check_validity(&g, &cut.inequality).unwrap().valid);
        }
    }

    #[test]
    fn walk_respects_depth_and_false_edges() {
        let g = crate::random::gnp(14, 0.4, 3);
        let point = vec![0.5; 14];
        let pool = build_clique_pool(&g, &point, &SeparationParams::default())
            .unwrap()
            .pool;
        let params = SeparationParams {
            min_depth: 2,
            max_depth: 3,
            ..Default::default()
        };
        let mut count = 0;
        for start in pool {
            let walk = Walk::run(&g, &point, start, &params, &mut count);
            assert!(walk.trace.len() <= params.max_depth + 1);
            assert!(walk.trace.steps().iter().all(|s| !s.false_edges.is_empty()));
        }
    }

    #[test]
    fn rejects_bad_input() {
        let g = Graph::complete(3);
        assert!(sep_for_stab(
            &g,
            &[0.5; 2],
            &[],
            &SeparationParams::default(),
            LiftProcedure::Basic
        )
        .is_err());
        let not_clique = [VertexSet::from([0, 1])];
        let path = Graph::from_edges(3, [(0, 2)]).unwrap();
        assert!(matches!(
            sep_for_stab(
                &path,
                &[0.5; 3],
                &not_clique,
                &SeparationParams::default(),
                LiftProcedure::Basic
            ),
            Err(Error::NotAClique(_))
        ));
    }
}
