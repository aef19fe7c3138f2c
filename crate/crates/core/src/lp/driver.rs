//! Cutting-plane loop: solve the clique-cover relaxation, separate, add rows,
//! repeat until no cut is found or time runs out.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use super::cover::edge_clique_cover;
use super::simplex::{LpModel, LpOptions, LpSolver, LpStatus};
use crate::combinatorics::rounding_lower_bound;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::lifting::{Inequality, LiftProcedure};
use crate::separation::{build_clique_pool, sep_for_stab, SeparationParams};

const INTEGRALITY_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CutProcedure {
    CliqueOnly,
    Basic,
    Strengthened,
}

impl CutProcedure {
    pub fn code(self) -> &'static str {
        match self {
            CutProcedure::CliqueOnly => "c",
            CutProcedure::Basic => "b",
            CutProcedure::Strengthened => "s",
        }
    }

    pub fn lifting(self) -> Option<LiftProcedure> {
        match self {
            CutProcedure::CliqueOnly => None,
            CutProcedure::Basic => Some(LiftProcedure::Basic),
            CutProcedure::Strengthened => Some(LiftProcedure::Strengthened),
        }
    }
}

impl fmt::Display for CutProcedure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for CutProcedure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "c" | "clique" => Ok(CutProcedure::CliqueOnly),
            "b" | "basic" => Ok(CutProcedure::Basic),
            "s" | "strengthened" => Ok(CutProcedure::Strengthened),
            _ => Err(Error::InvalidParams(format!("unknown procedure `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CutKind {
    Clique,
    Rank,
    WeightedRank,
}

/// Clique: unit coefficients, rhs 1 and a clique support. Rank: unit
/// coefficients otherwise. Everything else, including negative
/// coefficients, counts as weighted rank.
pub fn classify_cut(g: &Graph, ineq: &Inequality) -> CutKind {
    if ineq.coefficients().all(|(_, c)| c == 1) {
        if ineq.rhs() == 1 && g.is_clique(&ineq.support()) {
            CutKind::Clique
        } else {
            CutKind::Rank
        }
    } else {
        CutKind::WeightedRank
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutCounts {
    pub clique: usize,
    pub rank: usize,
    pub weighted_rank: usize,
}

impl CutCounts {
    pub fn total(&self) -> usize {
        self.clique + self.rank + self.weighted_rank
    }

    fn add(&mut self, kind: CutKind) {
        match kind {
            CutKind::Clique => self.clique += 1,
            CutKind::Rank => self.rank += 1,
            CutKind::WeightedRank => self.weighted_rank += 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RunStatus {
    /// The LP optimum is integral.
    Integral,
    /// Separation found nothing more.
    NoCuts,
    TimeLimit,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub graph: String,
    pub n: usize,
    pub density: f64,
    pub alpha: Option<usize>,
    pub lb: usize,
    pub z0: f64,
    pub final_bound: f64,
    /// Seconds; left out when the caller asks for reproducible output.
    pub wall_time: Option<f64>,
    pub procedure: CutProcedure,
    pub status: RunStatus,
    pub rounds: usize,
    pub cut_counts: CutCounts,
}

impl BoundReport {
    pub const CSV_HEADER: &'static str =
        "graph,n,density,alpha,lb,z0,bound,time,procedure,status,rounds,clique_cuts,rank_cuts,weighted_rank_cuts";

    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{:.4},{},{},{:.6},{:.6},{},{},{},{},{},{},{}",
            self.graph,
            self.n,
            self.density,
            self.alpha.map(|a| a.to_string()).unwrap_or_default(),
            self.lb,
            self.z0,
            self.final_bound,
            self.wall_time
                .map(|t| format!("{t:.3}"))
                .unwrap_or_default(),
            self.procedure,
            serde_json::to_value(self.status)
                .ok()
                .and_then(|v| v.as_str().map(String::from))
                .unwrap_or_default(),
            self.rounds,
            self.cut_counts.clique,
            self.cut_counts.rank,
            self.cut_counts.weighted_rank,
        )
    }

    pub fn from_csv_row(line: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse {
            line: 1,
            msg: msg.to_string(),
        };
        let f: Vec<&str> = line.trim_end().split(',').collect();
        if f.len() != 14 {
            return Err(bad("expected 14 fields"));
        }
        let num = |s: &str| s.parse::<f64>().map_err(|_| bad("invalid number"));
        let int = |s: &str| s.parse::<usize>().map_err(|_| bad("invalid integer"));
        let opt_int = |s: &str| {
            if s.is_empty() {
                Ok(None)
            } else {
                int(s).map(Some)
            }
        };
        Ok(BoundReport {
            graph: f[0].to_string(),
            n: int(f[1])?,
            density: num(f[2])?,
            alpha: opt_int(f[3])?,
            lb: int(f[4])?,
            z0: num(f[5])?,
            final_bound: num(f[6])?,
            wall_time: if f[7].is_empty() {
                None
            } else {
                Some(num(f[7])?)
            },
            procedure: f[8].parse()?,
            status: serde_json::from_value(serde_json::Value::String(f[9].into()))
                .map_err(|_| bad("invalid status"))?,
            rounds: int(f[10])?,
            cut_counts: CutCounts {
                clique: int(f[11])?,
                rank: int(f[12])?,
                weighted_rank: int(f[13])?,
            },
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CuttingPlaneRun {
    pub report: BoundReport,
    /// LP value after each round, starting with `z0`.
    pub history: Vec<f64>,
    /// Rows added by separation, gcd-reduced, with their kind.
    pub cuts: Vec<(Inequality, CutKind)>,
    pub final_point: Vec<f64>,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub name: String,
    pub params: SeparationParams,
    pub procedure: CutProcedure,
    pub time_limit: Duration,
    pub alpha: Option<usize>,
    pub record_time: bool,
}

impl RunConfig {
    pub fn new(procedure: CutProcedure) -> Self {
        Self {
            name: String::new(),
            params: SeparationParams::default(),
            procedure,
            time_limit: Duration::from_secs(120),
            alpha: None,
            record_time: true,
        }
    }
}

fn is_integral(x: &[f64]) -> bool {
    x.iter()
        .all(|v| !(INTEGRALITY_TOLERANCE..=1.0 - INTEGRALITY_TOLERANCE).contains(v))
}

fn add_ineq(lp: &mut LpSolver, ineq: &Inequality) -> Result<()> {
    lp.add_row(
        ineq.coefficients().map(|(v, c)| (v, c as f64)),
        ineq.rhs() as f64,
    )
}

pub fn cutting_plane_run(g: &Graph, config: &RunConfig) -> Result<CuttingPlaneRun> {
    config.params.validate()?;
    let started = Instant::now();
    let deadline = started + config.time_limit;
    let n = g.vertex_count();
    let mut lp = LpSolver::new(LpModel::new(n));
    let mut rows: HashSet<Inequality> = HashSet::new();
    for w in edge_clique_cover(g) {
        let ineq = Inequality::clique(&w);
        add_ineq(&mut lp, &ineq)?;
        rows.insert(ineq);
    }
    let mut history = Vec::new();
    let mut cuts = Vec::new();
    let mut counts = CutCounts::default();
    let mut lb = 0;
    let mut point = vec![0.0; n];
    let status = loop {
        let sol = lp.solve(LpOptions {
            max_iterations: None,
            deadline: Some(deadline),
        });
        if sol.status == LpStatus::Stalled {
            if Instant::now() >= deadline && !history.is_empty() {
                break RunStatus::TimeLimit;
            }
            return Err(Error::LpStalled {
                iterations: sol.iterations,
            });
        }
        history.push(sol.value);
        point = sol.x;
        lb = lb.max(rounding_lower_bound(g, &point).len());
        if is_integral(&point) {
            break RunStatus::Integral;
        }
        if Instant::now() >= deadline {
            break RunStatus::TimeLimit;
        }
        let pool = build_clique_pool(g, &point, &config.params)?;
        let mut found: Vec<Inequality> = pool.violated.iter().map(Inequality::clique).collect();
        if let Some(proc) = config.procedure.lifting() {
            let sep = sep_for_stab(g, &point, &pool.pool, &config.params, proc)?;
            found.extend(sep.cuts.into_iter().map(|c| c.inequality.normalized().0));
        }
        let mut added = 0;
        for ineq in found {
            if rows.insert(ineq.clone()) {
                add_ineq(&mut lp, &ineq)?;
                let kind = classify_cut(g, &ineq);
                counts.add(kind);
                cuts.push((ineq, kind));
                added += 1;
            }
        }
        if added == 0 {
            break RunStatus::NoCuts;
        }
    };
    let report = BoundReport {
        graph: config.name.clone(),
        n,
        density: g.density(),
        alpha: config.alpha,
        lb,
        z0: history[0],
        final_bound: *history.last().expect("at least one LP was solved"),
        wall_time: config.record_time.then(|| started.elapsed().as_secs_f64()),
        procedure: config.procedure,
        status,
        rounds: history.len(),
        cut_counts: counts,
    };
    Ok(CuttingPlaneRun {
        report,
        history,
        cuts,
        final_point: point,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::stability_number;
    use crate::fixtures::{figure1_graph, wheel5};
    use crate::graph::VertexSet;

    #[test]
    fn c5_strengthened_reaches_alpha() {
        let run = cutting_plane_run(
            &Graph::cycle(5),
            &RunConfig::new(CutProcedure::Strengthened),
        )
        .unwrap();
        assert!((run.report.z0 - 2.5).abs() < 1e-9);
        assert!((run.report.final_bound - 2.0).abs() < 1e-9);
        assert_eq!(run.report.lb, 2);
        assert!(run.cuts.iter().any(|(_, k)| *k != CutKind::Clique));
    }

    #[test]
    fn clique_only_stalls_on_c5() {
        let run =
            cutting_plane_run(&Graph::cycle(5), &RunConfig::new(CutProcedure::CliqueOnly)).unwrap();
        assert_eq!(run.report.status, RunStatus::NoCuts);
        assert!((run.report.final_bound - 2.5).abs() < 1e-9);
    }

    #[test]
    fn bounds_are_sound_and_monotone() {
        for g in [figure1_graph(), wheel5(), crate::random::gnp(12, 0.3, 5)] {
            let alpha = stability_number(&g) as f64;
            for proc in [
                CutProcedure::CliqueOnly,
                CutProcedure::Basic,
                CutProcedure::Strengthened,
            ] {
                let run = cutting_plane_run(&g, &RunConfig::new(proc)).unwrap();
                assert!(run.history.windows(2).all(|w| w[1] <= w[0] + 1e-9));
                assert!(run.history.iter().all(|&z| z >= alpha - 1e-6));
                assert!(run.report.lb as f64 <= alpha);
                assert_eq!(run.report.cut_counts.total(), run.cuts.len());
            }
        }
    }

    #[test]
    fn trivial_densities() {
        let run =
            cutting_plane_run(&Graph::empty(6), &RunConfig::new(CutProcedure::Basic)).unwrap();
        assert_eq!(
            (run.report.final_bound, run.report.status),
            (6.0, RunStatus::Integral)
        );
        let run =
            cutting_plane_run(&Graph::complete(6), &RunConfig::new(CutProcedure::Basic)).unwrap();
        assert!((run.report.final_bound - 1.0).abs() < 1e-9);
    }

    #[test]
    fn classification() {
        let g = Graph::cycle(5);
        assert_eq!(
            classify_cut(&g, &Inequality::clique(&VertexSet::from([0, 1]))),
            CutKind::Clique
        );
        assert_eq!(
            classify_cut(&g, &Inequality::new((0..5).map(|v| (v, 1)), 2)),
            CutKind::Rank
        );
        assert_eq!(
            classify_cut(&g, &Inequality::new([(0, 2), (1, 1)], 2)),
            CutKind::WeightedRank
        );
        assert_eq!(
            classify_cut(&g, &Inequality::new([(0, 1), (1, -1)], 1)),
            CutKind::WeightedRank
        );
    }

    #[test]
    fn csv_round_trip() {
        let mut cfg = RunConfig::new(CutProcedure::Strengthened);
        cfg.name = "c5".into();
        cfg.alpha = Some(2);
        let report = cutting_plane_run(&Graph::cycle(5), &cfg).unwrap().report;
        let row = report.to_csv_row();
        let back = BoundReport::from_csv_row(&row).unwrap();
        assert_eq!(back.to_csv_row(), row);
        assert_eq!(
            BoundReport::CSV_HEADER.split(',').count(),
            row.split(',').count()
        );
        cfg.record_time = false;
        let quiet = cutting_plane_run(&Graph::cycle(5), &cfg).unwrap().report;
        assert_eq!(quiet.wall_time, None);
    }
}
