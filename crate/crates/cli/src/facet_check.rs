use std::path::PathBuf;

use clap::Args;
use serde::{Deserialize, Serialize};
use stabcut::facet::{
    assert_facet_of_ft, check_conditions, face_dimension, face_equalities, find_witness,
    verify_isomorphism, ConditionReport, DimensionCertificate, FacetReport, FacetWitness,
    IsomorphismReport,
};
use stabcut::lifting::{strengthened_lift, LiftProcedure};
use stabcut::projection::{ProjectionTrace, TraceRecord};
use stabcut::VertexSet;

use crate::input::{load_graph, read_json, set_text, to_json};
use crate::{Format, GraphArgs};

#[derive(Args, Debug)]
pub struct FacetCheckArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// JSON with `hyperedges`, and optionally `classes`, `seed`, `representative`
    /// (0-based vertex indices).
    #[arg(long)]
    witness: PathBuf,
    /// Serialized trace; overrides the witness hyperedges.
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Debug, Deserialize)]
struct WitnessFile {
    #[serde(default)]
    hyperedges: Vec<VertexSet>,
    /// `V_r^1, ..., V_r^k`; searched for when absent.
    classes: Option<Vec<VertexSet>>,
    /// `W_{r+1}`.
    seed: Option<VertexSet>,
    representative: Option<VertexSet>,
}

#[derive(Debug, Serialize)]
struct FaceDimension {
    t: usize,
    expected: i64,
    #[serde(flatten)]
    certificate: DimensionCertificate,
}

#[derive(Debug, Serialize)]
struct Report {
    witness: Option<FacetWitness>,
    searched: bool,
    conditions: Option<ConditionReport>,
    dimensions: Vec<FaceDimension>,
    facets: Vec<FacetReport>,
    isomorphism: Option<IsomorphismReport>,
    /// No oracle result contradicts a claim whose conditions hold.
    consistent: bool,
}

pub fn run(args: &FacetCheckArgs, format: Format) -> anyhow::Result<bool> {
    let g = load_graph(&args.graph)?;
    let file: WitnessFile = read_json(&args.witness)?;
    let trace = match &args.trace {
        Some(p) => ProjectionTrace::from_record(&g, &read_json::<TraceRecord>(p)?)?,
        None => ProjectionTrace::from_cliques(&g, &file.hyperedges)?,
    };
    anyhow::ensure!(!trace.is_empty(), "the projection sequence is empty");
    let n = g.vertex_count() as i64;
    let searched = file.classes.is_none();
    let witness = match &file.classes {
        Some(classes) => {
            let mut w = FacetWitness::new(classes.clone(), trace.cliques());
            w.representative = file.representative.clone();
            Some(w)
        }
        None => file
            .seed
            .as_ref()
            .and_then(|s| find_witness(&trace, s))
            .map(|mut w| {
                w.representative = file.representative.clone();
                w
            }),
    };
    let conditions = witness
        .as_ref()
        .map(|w| check_conditions(&trace, w, file.seed.as_ref()))
        .transpose()?;
    let mut dimensions = Vec::new();
    for t in 1..=trace.len() {
        let certificate = face_dimension(&g, &face_equalities(&trace, t))?;
        dimensions.push(FaceDimension {
            t,
            expected: n - t as i64,
            certificate,
        });
    }
    let mut facets = Vec::new();
    if let Some(seed) = &file.seed {
        let cut = strengthened_lift(&trace, seed, trace.len(), None)?;
        debug_assert_eq!(cut.procedure, LiftProcedure::Strengthened);
        for t in 0..=trace.len() {
            facets.push(assert_facet_of_ft(&cut, t, witness.as_ref())?);
        }
    }
    let isomorphism = match &witness {
        Some(w) if w.representative.is_some() => Some(verify_isomorphism(&trace, w)?),
        _ => None,
    };
    let first_claim = conditions
        .as_ref()
        .is_some_and(ConditionReport::first_claim);
    let consistent = facets.iter().all(FacetReport::consistent)
        && (!first_claim
            || dimensions
                .iter()
                .all(|d| d.certificate.affine_dim == d.expected));
    let report = Report {
        witness,
        searched,
        conditions,
        dimensions,
        facets,
        isomorphism,
        consistent,
    };
    match format {
        Format::Json => println!("{}", to_json(&report)?),
        Format::Csv => print_csv(&report),
        Format::Text => print_text(&report),
    }
    Ok(report.consistent)
}

fn rows(report: &Report) -> Vec<(String, String)> {
    let mut out = Vec::new();
    let flag = |b: bool| if b { "pass" } else { "fail" }.to_string();
    if let Some(w) = &report.witness {
        let classes: Vec<String> = w.classes.iter().map(set_text).collect();
        out.push(("classes".into(), classes.join(" ")));
    } else {
        out.push(("classes".into(), "none found".into()));
    }
    if let Some(c) = &report.conditions {
        out.push(("interwv".into(), flag(c.interwv)));
        for (t, ((i, ii), iii)) in c
            .condition_i
            .iter()
            .zip(&c.condition_ii)
            .zip(&c.condition_iii)
            .enumerate()
        {
            out.push((format!("condition_i[{}]", t + 1), flag(*i)));
            out.push((format!("condition_ii[{}]", t + 1), flag(*ii)));
            out.push((format!("condition_iii[{}]", t + 1), flag(*iii)));
        }
        out.push(("condition_iv".into(), flag(c.condition_iv)));
        out.push(("condition_iv_every_t".into(), flag(c.condition_iv_every_t)));
        out.push(("condition_v".into(), flag(c.condition_v)));
        if let Some(s) = c.seed {
            out.push(("seed".into(), flag(s)));
        }
    }
    for d in &report.dimensions {
        out.push((
            format!("dim_f[{}]", d.t),
            format!("{} (n - t = {})", d.certificate.affine_dim, d.expected),
        ));
    }
    for f in &report.facets {
        let predicted = match f.predicted {
            Some(true) => ", predicted",
            _ => "",
        };
        out.push((
            format!("facet[{}]", f.t),
            format!("{}{predicted}", flag(f.facet)),
        ));
    }
    if let Some(i) = &report.isomorphism {
        out.push(("isomorphism".into(), flag(i.holds)));
    }
    out.push(("consistent".into(), flag(report.consistent)));
    out
}

fn print_text(report: &Report) {
    for (k, v) in rows(report) {
        println!("{k:<22} {v}");
    }
    if let Some(i) = report
        .isomorphism
        .as_ref()
        .and_then(|i| i.counterexample.as_ref())
    {
        println!("counterexample: {i}");
    }
}

fn print_csv(report: &Report) {
    println!("check,result");
    for (k, v) in rows(report) {
        println!("{k},{v}");
    }
}
