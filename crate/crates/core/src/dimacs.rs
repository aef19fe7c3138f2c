//! ASCII DIMACS graph format (`c` comments, one `p edge n m` header, `e u v`
//! edge lines with 1-based endpoints).

use std::fmt::Write as _;
use std::io::BufRead;

use crate::error::{Error, Result};
use crate::graph::Graph;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_usize(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse::<usize>()
        .map_err(|_| parse_err(line, format!("invalid {what} `{tok}`")))
}

pub fn parse_dimacs(text: &str) -> Result<Graph> {
    parse_lines(text.lines().map(|l| Ok(l.to_string())))
}

pub fn read_dimacs<R: BufRead>(reader: R) -> Result<Graph> {
    parse_lines(
        reader
            .lines()
            .map(|l| l.map_err(|e| parse_err(0, e.to_string()))),
    )
}

fn parse_lines<I>(lines: I) -> Result<Graph>
where
    I: Iterator<Item = Result<String>>,
{
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    let mut last_line = 0;
    for (idx, line) in lines.enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let line = line?;
        let mut toks = line.split_whitespace();
        let Some(kind) = toks.next() else { continue };
        match kind {
            "c" => {}
            "p" => {
                if n.is_some() {
                    return Err(parse_err(lineno, "duplicate `p` line"));
                }
                match toks.next() {
                    Some("edge" | "edges" | "col") => {}
                    Some(other) => {
                        return Err(parse_err(
                            lineno,
                            format!("unsupported problem type `{other}`"),
                        ))
                    }
                    None => return Err(parse_err(lineno, "missing problem type")),
                }
                let count = parse_usize(toks.next(), lineno, "vertex count")?;
                // The edge count is informational; duplicates make it unreliable.
                parse_usize(toks.next(), lineno, "edge count")?;
                if toks.next().is_some() {
                    return Err(parse_err(lineno, "trailing tokens in `p` line"));
                }
                n = Some(count);
            }
            "e" => {
                let count = n.ok_or_else(|| parse_err(lineno, "edge before `p` line"))?;
                let u = parse_usize(toks.next(), lineno, "endpoint")?;
                let v = parse_usize(toks.next(), lineno, "endpoint")?;
                for x in [u, v] {
                    if x == 0 || x > count {
                        return Err(parse_err(
                            lineno,
                            format!("vertex {x} outside [1, {count}]"),
                        ));
                    }
                }
                if u == v {
                    return Err(parse_err(lineno, format!("self-loop on vertex {u}")));
                }
                edges.push((u - 1, v - 1));
            }
            other => return Err(parse_err(lineno, format!("unknown line type `{other}`"))),
        }
    }
    let n = n.ok_or_else(|| parse_err(last_line, "missing `p` line"))?;
    Graph::from_edges(n, edges)
}

/// Serializes `g` with one `e` line per edge, endpoints in increasing order.
pub fn to_dimacs(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "p edge {} {}", g.vertex_count(), g.edge_count()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}
