use clap::Args;
use serde::Serialize;
use stabcut::lp::{BoundReport, CutProcedure};
use stabcut::random::gnp;

use crate::bound::{run_jobs, Instance, JobOutcome, JobResult};
use crate::input::to_json;
use crate::{Format, RunArgs};

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Vertex counts.
    #[arg(long = "n", value_delimiter = ',', default_values_t = [20])]
    sizes: Vec<usize>,
    /// Edge probabilities.
    #[arg(long = "density", value_delimiter = ',', default_values_t = [0.5])]
    densities: Vec<f64>,
    /// Graphs per (n, density).
    #[arg(long, default_value_t = 5)]
    instances: usize,
    /// Seed of the first graph; graph `i` uses `seed + i`.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Print one row per graph instead of averages.
    #[arg(long)]
    per_instance: bool,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Debug, Serialize)]
struct Aggregate {
    graph: String,
    n: usize,
    /// Mean realized density.
    density: f64,
    procedure: CutProcedure,
    instances: usize,
    failed: usize,
    lb: f64,
    z0: f64,
    bound: f64,
    time: Option<f64>,
    rounds: f64,
    clique_cuts: f64,
    rank_cuts: f64,
    weighted_rank_cuts: f64,
    invalid_cuts: usize,
}

const AGGREGATE_HEADER: &str =
    "graph,n,density,procedure,instances,failed,lb,z0,bound,time,rounds,clique_cuts,rank_cuts,weighted_rank_cuts,invalid_cuts";

impl Aggregate {
    fn csv_row(&self) -> String {
        format!(
            "{},{},{:.4},{},{},{},{:.2},{:.6},{:.6},{},{:.2},{:.2},{:.2},{:.2},{}",
            self.graph,
            self.n,
            self.density,
            self.procedure,
            self.instances,
            self.failed,
            self.lb,
            self.z0,
            self.bound,
            self.time.map(|t| format!("{t:.3}")).unwrap_or_default(),
            self.rounds,
            self.clique_cuts,
            self.rank_cuts,
            self.weighted_rank_cuts,
            self.invalid_cuts
        )
    }
}

fn graph_name(n: usize, d: f64) -> String {
    format!("G({n};{d})")
}

fn aggregate(n: usize, d: f64, procedure: CutProcedure, outcomes: &[&JobOutcome]) -> Aggregate {
    let done: Vec<(&BoundReport, usize)> = outcomes
        .iter()
        .filter_map(|o| match &o.result {
            JobResult::Done {
                report,
                invalid_cuts,
            } => Some((report, *invalid_cuts)),
            JobResult::Failed { .. } => None,
        })
        .collect();
    let k = done.len().max(1) as f64;
    let mean = |f: &dyn Fn(&BoundReport) -> f64| done.iter().map(|(r, _)| f(r)).sum::<f64>() / k;
    let time = done
        .iter()
        .map(|(r, _)| r.wall_time)
        .sum::<Option<f64>>()
        .map(|t| t / k);
    Aggregate {
        graph: graph_name(n, d),
        n,
        density: mean(&|r| r.density),
        procedure,
        instances: outcomes.len(),
        failed: outcomes.len() - done.len(),
        lb: mean(&|r| r.lb as f64),
        z0: mean(&|r| r.z0),
        bound: mean(&|r| r.final_bound),
        time,
        rounds: mean(&|r| r.rounds as f64),
        clique_cuts: mean(&|r| r.cut_counts.clique as f64),
        rank_cuts: mean(&|r| r.cut_counts.rank as f64),
        weighted_rank_cuts: mean(&|r| r.cut_counts.weighted_rank as f64),
        invalid_cuts: done.iter().map(|(_, i)| i).sum(),
    }
}

pub fn run(args: &BenchArgs, format: Format, jobs: usize) -> anyhow::Result<bool> {
    anyhow::ensure!(args.instances > 0, "--instances must be positive");
    for &d in &args.densities {
        anyhow::ensure!((0.0..=1.0).contains(&d), "density {d} is not a probability");
    }
    let mut instances = Vec::new();
    for &n in &args.sizes {
        for &d in &args.densities {
            for i in 0..args.instances as u64 {
                let seed = args.seed + i;
                instances.push(Instance {
                    name: format!("{}#{seed}", graph_name(n, d)),
                    graph: Ok(gnp(n, d, seed)),
                    alpha: None,
                });
            }
        }
    }
    let outcomes = run_jobs(&instances, &args.run, jobs)?;
    let ok = outcomes.iter().all(JobOutcome::ok);
    if args.per_instance {
        match format {
            Format::Json => println!("{}", to_json(&outcomes)?),
            _ => {
                println!("{}", BoundReport::CSV_HEADER);
                for o in &outcomes {
                    println!("{}", o.csv_row());
                }
            }
        }
        return Ok(ok);
    }
    let mut rows = Vec::new();
    for &n in &args.sizes {
        for &d in &args.densities {
            for &p in &args.run.procs {
                let procedure: CutProcedure = p.into();
                let prefix = format!("{}#", graph_name(n, d));
                let group: Vec<&JobOutcome> = outcomes
                    .iter()
                    .filter(|o| o.procedure == procedure && o.graph.starts_with(&prefix))
                    .collect();
                rows.push(aggregate(n, d, procedure, &group));
            }
        }
    }
    match format {
        Format::Json => println!("{}", to_json(&rows)?),
        Format::Csv => {
            println!("{AGGREGATE_HEADER}");
            for r in &rows {
                println!("{}", r.csv_row());
            }
        }
        Format::Text => {
            println!(
                "{:<14} {:>4} {:>10} {:>8} {:>10} {:>10} {:>8}",
                "graph", "proc", "density", "lb", "z0", "bound", "invalid"
            );
            for r in &rows {
                println!(
                    "{:<14} {:>4} {:>10.4} {:>8.2} {:>10.4} {:>10.4} {:>8}",
                    r.graph, r.procedure, r.density, r.lb, r.z0, r.bound, r.invalid_cuts
                );
            }
        }
    }
    Ok(ok)
}
