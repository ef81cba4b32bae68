//! Plain-text graph format.
//!
//! ```text
//! p h3 <n> <m>
//! e <a> <b> <c>      (m lines, a < b < c, colex order)
//! c <anything>       (comments, allowed anywhere)
//! ```
//!
//! Pattern files add one `r <root>` line.

use std::fmt::Write as _;

use crate::error::{Error, Result};

use super::triple::{rank_sorted, sort3};
use super::ThreeGraph;

/// A parsed graph file with its comments and optional root line.
#[derive(Debug, Clone)]
pub struct Document {
    pub graph: ThreeGraph,
    pub comments: Vec<String>,
    pub root: Option<usize>,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_num(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| parse_err(line, format!("{what} '{tok}' is not a non-negative integer")))
}

/// Parses a graph file; edges may appear in any order and with unsorted
/// vertices. `r` lines are rejected.
pub fn parse_threegraph(text: &str) -> Result<ThreeGraph> {
    let doc = parse_document(text)?;
    if doc.root.is_some() {
        return Err(parse_err(0, "root line is only allowed in pattern files"));
    }
    Ok(doc.graph)
}

/// Parses a graph or pattern file.
pub fn parse_document(text: &str) -> Result<Document> {
    let mut graph: Option<ThreeGraph> = None;
    let mut declared = 0usize;
    let mut comments = Vec::new();
    let mut root = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        let mut toks = trimmed.split_whitespace();
        let tag = toks.next().unwrap();
        match tag {
            "c" => {
                comments.push(trimmed[1..].trim_start().to_string());
                continue;
            }
            "p" => {
                if graph.is_some() {
                    return Err(parse_err(line, "duplicate header"));
                }
                if toks.next() != Some("h3") {
                    return Err(parse_err(line, "header must start with 'p h3'"));
                }
                let n = parse_num(toks.next(), line, "vertex count")?;
                declared = parse_num(toks.next(), line, "edge count")?;
                graph = Some(ThreeGraph::new(n).map_err(|e| parse_err(line, e.to_string()))?);
            }
            "e" => {
                let g = graph
                    .as_mut()
                    .ok_or_else(|| parse_err(line, "edge before header"))?;
                let a = parse_num(toks.next(), line, "vertex")?;
                let b = parse_num(toks.next(), line, "vertex")?;
                let c = parse_num(toks.next(), line, "vertex")?;
                let n = g.n();
                if a >= n || b >= n || c >= n {
                    return Err(parse_err(line, format!("vertex out of range in ({a},{b},{c}) for n={n}")));
                }
                if a == b || b == c || a == c {
                    return Err(parse_err(line, format!("repeated vertex in ({a},{b},{c})")));
                }
                let (x, y, z) = sort3(a, b, c);
                if !g.insert_index(rank_sorted(x, y, z)) {
                    return Err(parse_err(line, format!("duplicate edge ({x},{y},{z})")));
                }
            }
            "r" => {
                let g = graph
                    .as_ref()
                    .ok_or_else(|| parse_err(line, "root before header"))?;
                if root.is_some() {
                    return Err(parse_err(line, "duplicate root line"));
                }
                let r = parse_num(toks.next(), line, "root")?;
                if r >= g.n() {
                    return Err(parse_err(line, format!("root {r} out of range for n={}", g.n())));
                }
                root = Some(r);
            }
            other => return Err(parse_err(line, format!("unknown line type '{other}'"))),
        }
        if toks.next().is_some() {
            return Err(parse_err(line, "trailing tokens"));
        }
    }
    let graph = graph.ok_or_else(|| parse_err(0, "missing 'p h3' header"))?;
    if graph.edge_count() != declared {
        return Err(parse_err(
            0,
            format!("header declares {declared} edges but {} were given", graph.edge_count()),
        ));
    }
    Ok(Document {
        graph,
        comments,
        root,
    })
}

/// Writes the header, then `comments` as `c` lines, then edges in colex
/// order.
pub fn format_threegraph(g: &ThreeGraph, comments: &[String]) -> String {
    let mut out = String::new();
    writeln!(out, "p h3 {} {}", g.n(), g.edge_count()).unwrap();
    for c in comments {
        writeln!(out, "c {c}").unwrap();
    }
    for [a, b, c] in g.edges() {
        writeln!(out, "e {a} {b} {c}").unwrap();
    }
    out
}
