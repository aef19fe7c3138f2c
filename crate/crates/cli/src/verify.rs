use std::path::PathBuf;

use clap::Args;
use serde::{Deserialize, Serialize};
use stabcut::facet::{face_dimension, FACET_ORACLE_LIMIT};
use stabcut::lifting::{check_validity, lift, CutRecord, Inequality};
use stabcut::projection::ProjectionTrace;
use stabcut::{Graph, VertexSet};

use crate::input::{ineq_text, load_graph, read_json, read_point, set_text, to_json};
use crate::{Format, GraphArgs};

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// JSON cut record, bare inequality, or an array of either.
    #[arg(long)]
    cuts: PathBuf,
    /// Point at which to report violations.
    #[arg(long)]
    point: Option<PathBuf>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum CutInput {
    Record(CutRecord),
    Plain(Inequality),
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum CutFile {
    Many(Vec<CutInput>),
    One(CutInput),
}

#[derive(Debug, Serialize)]
struct Verdict {
    inequality: Inequality,
    valid: bool,
    max_lhs: i64,
    /// Stable set exceeding the right-hand side.
    #[serde(skip_serializing_if = "Option::is_none")]
    violating_set: Option<VertexSet>,
    /// Re-running the recorded lifting reproduces the inequality.
    #[serde(skip_serializing_if = "Option::is_none")]
    replay_matches: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    violation: Option<f64>,
    /// Facet of STAB(G), decided on graphs small enough to enumerate.
    #[serde(skip_serializing_if = "Option::is_none")]
    facet: Option<bool>,
}

fn replay(g: &Graph, record: &CutRecord) -> bool {
    let Ok(trace) = ProjectionTrace::from_record(g, &record.trace) else {
        return false;
    };
    match lift(record.procedure, &trace, &record.seed, trace.len(), None) {
        Ok(cut) => cut.inequality == record.inequality && cut.factors == record.lambdas,
        Err(_) => false,
    }
}

pub fn run(args: &VerifyArgs, format: Format) -> anyhow::Result<bool> {
    let g = load_graph(&args.graph)?;
    let inputs = match read_json::<CutFile>(&args.cuts)? {
        CutFile::Many(v) => v,
        CutFile::One(c) => vec![c],
    };
    let point = args
        .point
        .as_ref()
        .map(|p| read_point(p, g.vertex_count()))
        .transpose()?;
    let mut verdicts = Vec::new();
    for input in &inputs {
        let (ineq, record) = match input {
            CutInput::Record(r) => (&r.inequality, Some(r)),
            CutInput::Plain(i) => (i, None),
        };
        let report = check_validity(&g, ineq)?;
        let facet = (g.vertex_count() <= FACET_ORACLE_LIMIT && report.valid)
            .then(|| face_dimension(&g, std::slice::from_ref(ineq)))
            .transpose()?
            .map(|c| c.affine_dim == g.vertex_count() as i64 - 1);
        verdicts.push(Verdict {
            inequality: ineq.clone(),
            valid: report.valid,
            max_lhs: report.max_lhs,
            violating_set: (!report.valid).then_some(report.witness),
            replay_matches: record.map(|r| replay(&g, r)),
            violation: point.as_ref().map(|p| ineq.violation(p)),
            facet: facet.or((!report.valid).then_some(false)),
        });
    }
    let opt = |b: Option<bool>| b.map(|b| b.to_string()).unwrap_or_default();
    match format {
        Format::Json => println!("{}", to_json(&verdicts)?),
        Format::Csv => {
            println!("index,valid,max_lhs,rhs,replay_matches,violation,facet,inequality");
            for (i, v) in verdicts.iter().enumerate() {
                println!(
                    "{i},{},{},{},{},{},{},{}",
                    v.valid,
                    v.max_lhs,
                    v.inequality.rhs(),
                    opt(v.replay_matches),
                    v.violation.map(|x| format!("{x:.6}")).unwrap_or_default(),
                    opt(v.facet),
                    ineq_text(&v.inequality)
                );
            }
        }
        Format::Text => {
            for (i, v) in verdicts.iter().enumerate() {
                let status = if v.valid { "valid" } else { "INVALID" };
                print!("cut {i}: {status}  {}", ineq_text(&v.inequality));
                if let Some(s) = &v.violating_set {
                    print!("  (stable set {} reaches {})", set_text(s), v.max_lhs);
                }
                if v.facet == Some(true) {
                    print!("  facet");
                }
                println!();
            }
        }
    }
    Ok(verdicts.iter().all(|v| v.valid))
}
