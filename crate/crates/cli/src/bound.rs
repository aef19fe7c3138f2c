use std::path::PathBuf;
use std::time::Duration;

use clap::Args;
use rayon::prelude::*;
use serde::Serialize;
use stabcut::benchmarks::desk_scale;
use stabcut::lifting::check_validity;
use stabcut::lp::{cutting_plane_run, BoundReport, CutProcedure, RunConfig, RunStatus};
use stabcut::Graph;

use crate::input::{read_graph, to_json};
use crate::{thread_pool, Format, RunArgs};

/// Directory scanned for `*.clq` / `*.col` files when no instance is named.
pub const INSTANCE_DIR_ENV: &str = "STABCUT_INSTANCES";

#[derive(Args, Debug)]
pub struct BoundArgs {
    /// DIMACS files.
    instances: Vec<PathBuf>,
    /// Directory to take instances from when none are listed.
    #[arg(long, env = INSTANCE_DIR_ENV)]
    instance_dir: Option<PathBuf>,
    /// Also run the regenerated MANN_a9, hamming6-4 and c-fat200-1 instances.
    #[arg(long)]
    builtin: bool,
    /// Complement the file graphs (clique benchmark files).
    #[arg(long)]
    complement: bool,
    #[command(flatten)]
    run: RunArgs,
}

pub struct Instance {
    pub name: String,
    pub graph: Result<Graph, String>,
    pub alpha: Option<usize>,
}

/// Outcome of one instance under one procedure.
#[derive(Debug, Serialize)]
pub struct JobOutcome {
    pub graph: String,
    pub procedure: CutProcedure,
    #[serde(flatten)]
    pub result: JobResult,
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum JobResult {
    Done {
        report: BoundReport,
        /// Emitted cuts that failed the exact validity check.
        invalid_cuts: usize,
    },
    Failed {
        error: String,
    },
}

impl JobOutcome {
    /// Completed within the time limit with every cut valid.
    pub fn ok(&self) -> bool {
        matches!(&self.result, JobResult::Done { report, invalid_cuts: 0 } if report.status != RunStatus::TimeLimit)
    }

    pub fn csv_row(&self) -> String {
        match &self.result {
            JobResult::Done { report, .. } => report.to_csv_row(),
            JobResult::Failed { .. } => {
                format!("{},,,,,,,,{},error,,,,", self.graph, self.procedure)
            }
        }
    }
}

pub fn run_jobs(
    instances: &[Instance],
    args: &RunArgs,
    jobs: usize,
) -> anyhow::Result<Vec<JobOutcome>> {
    let params = args.sep.params()?;
    let time_limit = Duration::try_from_secs_f64(args.time_limit)?;
    let work: Vec<(&Instance, CutProcedure)> = instances
        .iter()
        .flat_map(|i| args.procs.iter().map(move |&p| (i, p.into())))
        .collect();
    let pool = thread_pool(jobs)?;
    Ok(pool.install(|| {
        work.par_iter()
            .map(|&(inst, procedure)| {
                let result = match &inst.graph {
                    Err(e) => JobResult::Failed { error: e.clone() },
                    Ok(g) => {
                        let config = RunConfig {
                            name: inst.name.clone(),
                            params: params.clone(),
                            procedure,
                            time_limit,
                            alpha: inst.alpha,
                            record_time: !args.omit_timing,
                        };
                        match cutting_plane_run(g, &config) {
                            Err(e) => JobResult::Failed {
                                error: e.to_string(),
                            },
                            Ok(run) => {
                                let invalid_cuts = if args.no_verify {
                                    0
                                } else {
                                    run.cuts
                                        .iter()
                                        .filter(|(c, _)| {
                                            !check_validity(g, c).map(|r| r.valid).unwrap_or(false)
                                        })
                                        .count()
                                };
                                JobResult::Done {
                                    report: run.report,
                                    invalid_cuts,
                                }
                            }
                        }
                    }
                };
                JobOutcome {
                    graph: inst.name.clone(),
                    procedure,
                    result,
                }
            })
            .collect()
    }))
}

fn collect_instances(args: &BoundArgs) -> anyhow::Result<Vec<Instance>> {
    let mut paths = args.instances.clone();
    if paths.is_empty() && !args.builtin {
        let dir = args.instance_dir.as_ref().ok_or_else(|| {
            anyhow::anyhow!("no instances given and {INSTANCE_DIR_ENV} is not set")
        })?;
        let mut found: Vec<PathBuf> = std::fs::read_dir(dir)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "clq" || x == "col"))
            .collect();
        found.sort();
        paths = found;
    }
    let mut out: Vec<Instance> = paths
        .iter()
        .map(|p| Instance {
            name: p
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default(),
            graph: read_graph(p)
                .map(|g| if args.complement { g.complement() } else { g })
                .map_err(|e| format!("{e:#}")),
            alpha: None,
        })
        .collect();
    if args.builtin {
        out.extend(desk_scale().into_iter().map(|b| Instance {
            name: b.name.to_string(),
            graph: Ok(b.stable_set_graph()),
            alpha: Some(b.omega),
        }));
    }
    Ok(out)
}

pub fn run(args: &BoundArgs, format: Format, jobs: usize) -> anyhow::Result<bool> {
    let instances = collect_instances(args)?;
    let outcomes = run_jobs(&instances, &args.run, jobs)?;
    for o in &outcomes {
        match &o.result {
            JobResult::Failed { error } => eprintln!("{} ({}): {error}", o.graph, o.procedure),
            JobResult::Done { invalid_cuts, .. } if *invalid_cuts > 0 => {
                eprintln!("{} ({}): {invalid_cuts} invalid cuts", o.graph, o.procedure)
            }
            _ => {}
        }
    }
    match format {
        Format::Csv => {
            println!("{}", BoundReport::CSV_HEADER);
            for o in &outcomes {
                println!("{}", o.csv_row());
            }
        }
        Format::Json => println!("{}", to_json(&outcomes)?),
        Format::Text => print_table(&outcomes),
    }
    Ok(outcomes.iter().all(JobOutcome::ok))
}

fn print_table(outcomes: &[JobOutcome]) {
    println!(
        "{:<16} {:>5} {:>4} {:>5} {:>12} {:>12} {:>9} {:>10} {:>6} {:>7}",
        "graph", "n", "proc", "lb", "z0", "bound", "time", "status", "rounds", "cuts"
    );
    for o in outcomes {
        match &o.result {
            JobResult::Done { report: r, .. } => println!(
                "{:<16} {:>5} {:>4} {:>5} {:>12.4} {:>12.4} {:>9} {:>10} {:>6} {:>7}",
                r.graph,
                r.n,
                r.procedure,
                r.lb,
                r.z0,
                r.final_bound,
                r.wall_time
                    .map(|t| format!("{t:.2}"))
                    .unwrap_or_else(|| "-".into()),
                serde_json::to_value(r.status)
                    .ok()
                    .and_then(|v| v.as_str().map(String::from))
                    .unwrap_or_default(),
                r.rounds,
                r.cut_counts.total()
            ),
            JobResult::Failed { error } => println!(
                "{:<16} {:>5} {:>4} error: {error}",
                o.graph, "", o.procedure
            ),
        }
    }
}
