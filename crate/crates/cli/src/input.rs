use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use anyhow::Context;
use serde::de::DeserializeOwned;
use stabcut::dimacs::read_dimacs;
use stabcut::Graph;

use crate::GraphArgs;

pub fn read_graph(path: &Path) -> anyhow::Result<Graph> {
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    read_dimacs(BufReader::new(file)).with_context(|| format!("cannot parse {}", path.display()))
}

pub fn load_graph(args: &GraphArgs) -> anyhow::Result<Graph> {
    let g = read_graph(&args.graph)?;
    Ok(if args.complement { g.complement() } else { g })
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> anyhow::Result<T> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("cannot parse {}", path.display()))
}

/// A fractional point given as a JSON array of `n` numbers.
pub fn read_point(path: &Path, n: usize) -> anyhow::Result<Vec<f64>> {
    let point: Vec<f64> = read_json(path)?;
    anyhow::ensure!(
        point.len() == n,
        "point has {} entries, the graph has {n} vertices",
        point.len()
    );
    Ok(point)
}

pub fn to_json<T: serde::Serialize>(value: &T) -> anyhow::Result<String> {
    Ok(serde_json::to_string_pretty(value)?)
}

/// Text output names vertices by their 1-based DIMACS labels.
pub fn ineq_text(ineq: &stabcut::lifting::Inequality) -> String {
    ineq.to_text_with(|v| v + 1)
}

pub fn set_text(set: &stabcut::VertexSet) -> String {
    let labels: Vec<String> = set.iter().map(|v| (v + 1).to_string()).collect();
    format!("{{{}}}", labels.join(" "))
}
