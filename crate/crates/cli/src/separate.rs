use std::path::PathBuf;

use clap::Args;
use serde::Serialize;
use stabcut::lifting::{check_validity, CutRecord, Inequality};
use stabcut::lp::{edge_clique_cover, lp_solve, CutProcedure, LpModel};
use stabcut::separation::{build_clique_pool, sep_for_stab};

use crate::input::{ineq_text, load_graph, read_point, to_json};
use crate::{Format, GraphArgs, Proc, SepArgs};

#[derive(Args, Debug)]
pub struct SeparateArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// JSON array with one value per vertex; defaults to the optimum of the
    /// edge clique cover relaxation.
    #[arg(long)]
    point: Option<PathBuf>,
    #[arg(long = "proc", value_enum, default_value_t = Proc::S)]
    procedure: Proc,
    #[command(flatten)]
    sep: SepArgs,
}

#[derive(Debug, Serialize)]
struct SeparatedCut {
    #[serde(flatten)]
    record: CutRecord,
    violation: f64,
}

#[derive(Debug, Serialize)]
struct Report {
    point: Vec<f64>,
    violated_cliques: Vec<Inequality>,
    iterations_used: usize,
    projections_performed: usize,
    failed_iterations: usize,
    cuts: Vec<SeparatedCut>,
    all_valid: bool,
}

pub fn run(args: &SeparateArgs, format: Format) -> anyhow::Result<bool> {
    let g = load_graph(&args.graph)?;
    let params = args.sep.params()?;
    let point = match &args.point {
        Some(p) => read_point(p, g.vertex_count())?,
        None => {
            let mut model = LpModel::new(g.vertex_count());
            for w in edge_clique_cover(&g) {
                model.add_row(w.iter().map(|v| (v, 1.0)), 1.0)?;
            }
            lp_solve(&model).x
        }
    };
    let pool = build_clique_pool(&g, &point, &params)?;
    let violated_cliques: Vec<Inequality> = pool.violated.iter().map(Inequality::clique).collect();
    let mut report = Report {
        point: point.clone(),
        violated_cliques,
        iterations_used: 0,
        projections_performed: 0,
        failed_iterations: 0,
        cuts: Vec::new(),
        all_valid: true,
    };
    if let Some(procedure) = CutProcedure::from(args.procedure).lifting() {
        let outcome = sep_for_stab(&g, &point, &pool.pool, &params, procedure)?;
        report.iterations_used = outcome.iterations_used;
        report.projections_performed = outcome.projections_performed;
        report.failed_iterations = outcome.failed_iterations;
        for cut in &outcome.cuts {
            report.all_valid &= check_validity(&g, &cut.inequality)?.valid;
            report.cuts.push(SeparatedCut {
                violation: cut.inequality.violation(&point),
                record: cut.to_record(),
            });
        }
    }
    match format {
        Format::Json => println!("{}", to_json(&report)?),
        Format::Csv => {
            println!("kind,violation,rhs,inequality");
            for c in &report.violated_cliques {
                println!(
                    "clique,{:.6},{},{}",
                    c.violation(&point),
                    c.rhs(),
                    ineq_text(c)
                );
            }
            for c in &report.cuts {
                println!(
                    "lifted,{:.6},{},{}",
                    c.violation,
                    c.record.inequality.rhs(),
                    ineq_text(&c.record.inequality)
                );
            }
        }
        Format::Text => {
            println!(
                "{} violated pool cliques, {} lifted cuts ({} iterations, {} projections)",
                report.violated_cliques.len(),
                report.cuts.len(),
                report.iterations_used,
                report.projections_performed
            );
            for c in &report.cuts {
                println!("{:>9.4}  {}", c.violation, ineq_text(&c.record.inequality));
            }
        }
    }
    Ok(report.all_valid)
}
