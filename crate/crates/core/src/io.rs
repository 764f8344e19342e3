//! Line-based graph text format.
//!
//! ```text
//! # comment
//! n 3
//! e 0 1
//! e 1 2
//! base 0 2
//! ```
//!
//! Files whose labels are all below `n` keep their ids. Otherwise labels are
//! renumbered densely in order of first appearance.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{edge, Edge, Graph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphFile {
    pub graph: Graph,
    pub base: Option<Edge>,
}

enum Record {
    Edge(u64, u64),
    Base(u64, u64),
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_ids(line: usize, directive: &str, args: &[&str]) -> Result<(u64, u64)> {
    if args.len() != 2 {
        return Err(parse_error(
            line,
            format!("`{directive}` expects two vertex ids, found {}", args.len()),
        ));
    }
    let id = |s: &str| {
        s.parse::<u64>()
            .map_err(|_| parse_error(line, format!("bad vertex id {s:?}")))
    };
    Ok((id(args[0])?, id(args[1])?))
}

pub fn parse_graph(text: &str) -> Result<GraphFile> {
    let mut n: Option<usize> = None;
    let mut records: Vec<(usize, Record)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens[0] {
            "n" => {
                if n.is_some() {
                    return Err(parse_error(line, "repeated `n` line"));
                }
                if !records.is_empty() {
                    return Err(parse_error(line, "`n` must precede edges"));
                }
                if tokens.len() != 2 {
                    return Err(parse_error(line, "`n` expects one count"));
                }
                let count = tokens[1]
                    .parse::<usize>()
                    .map_err(|_| parse_error(line, format!("bad count {:?}", tokens[1])))?;
                n = Some(count);
            }
            "e" | "base" => {
                if n.is_none() {
                    return Err(parse_error(line, "missing `n` line before edges"));
                }
                let (a, b) = parse_ids(line, tokens[0], &tokens[1..])?;
                if a == b {
                    return Err(parse_error(line, format!("self-loop at {a}")));
                }
                let record = if tokens[0] == "e" {
                    Record::Edge(a, b)
                } else {
                    if records.iter().any(|(_, r)| matches!(r, Record::Base(..))) {
                        return Err(parse_error(line, "repeated `base` line"));
                    }
                    Record::Base(a, b)
                };
                records.push((line, record));
            }
            other => return Err(parse_error(line, format!("unknown directive {other:?}"))),
        }
    }
    let n = n.ok_or_else(|| parse_error(text.lines().count().max(1), "missing `n` line"))?;

    let labels = |r: &Record| match *r {
        Record::Edge(a, b) | Record::Base(a, b) => [a, b],
    };
    let dense = records
        .iter()
        .all(|(_, r)| labels(r).iter().all(|&x| x < n as u64));
    let mut ids: HashMap<u64, usize> = HashMap::new();
    let mut resolve = |line: usize, x: u64| -> Result<usize> {
        if dense {
            return Ok(x as usize);
        }
        let next = ids.len();
        let id = *ids.entry(x).or_insert(next);
        if id >= n {
            return Err(parse_error(
                line,
                format!("more than {n} distinct vertices"),
            ));
        }
        Ok(id)
    };

    let mut edges: Vec<Edge> = Vec::new();
    let mut lines_of: HashMap<Edge, usize> = HashMap::new();
    let mut base = None;
    for (line, record) in &records {
        let [a, b] = labels(record);
        let e = edge(resolve(*line, a)?, resolve(*line, b)?);
        match record {
            Record::Edge(..) => {
                if lines_of.insert(e, *line).is_some() {
                    return Err(parse_error(*line, format!("duplicate edge {a} {b}")));
                }
                edges.push(e);
            }
            Record::Base(..) => base = Some(e),
        }
    }
    let graph = Graph::from_edges(n, edges)?;
    Ok(GraphFile { graph, base })
}

/// Serializes `g` with sorted edges and an optional `base` line.
pub fn write_graph(g: &Graph, base: Option<Edge>, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    let _ = writeln!(out, "n {}", g.n());
    for (a, b) in g.edges() {
        let _ = writeln!(out, "e {a} {b}");
    }
    if let Some((a, b)) = base {
        let _ = writeln!(out, "base {a} {b}");
    }
    out
}
