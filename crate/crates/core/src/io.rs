//! DIMACS-style instance files.
//!
//! ```text
//! c optional comment lines
//! p edge <n> <m>
//! e <u> <v>        (m lines, 1-indexed)
//! ```
//!
//! Deletion-set files carry only `e <u> <v>` lines (plus comments).

use std::fmt::Write;

use thiserror::Error;

use crate::graph::{Edge, EdgeSet, Graph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: malformed header: {msg}")]
    Header { line: usize, msg: String },
    #[error("missing 'p edge <n> <m>' header")]
    MissingHeader,
    #[error("line {line}: malformed edge record: {msg}")]
    Record { line: usize, msg: String },
    #[error("line {line}: endpoint {vertex} out of range 1..={n}")]
    OutOfRange {
        line: usize,
        vertex: usize,
        n: usize,
    },
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge {u} {v}")]
    Duplicate { line: usize, u: usize, v: usize },
    #[error("header declares {declared} edges but {found} were listed")]
    EdgeCount { declared: usize, found: usize },
    #[error("line {line}: unrecognized line")]
    Unrecognized { line: usize },
}

fn parse_uint(tok: Option<&str>, line: usize, what: &str) -> Result<usize, ParseError> {
    let tok = tok.ok_or_else(|| ParseError::Record {
        line,
        msg: format!("missing {what}"),
    })?;
    tok.parse().map_err(|_| ParseError::Record {
        line,
        msg: format!("invalid {what} '{tok}'"),
    })
}

// Splits an "e u v" line into raw 1-indexed endpoints.
fn parse_edge_line<'a>(
    mut toks: impl Iterator<Item = &'a str>,
    line: usize,
) -> Result<(usize, usize), ParseError> {
    let u = parse_uint(toks.next(), line, "endpoint")?;
    let v = parse_uint(toks.next(), line, "endpoint")?;
    if toks.next().is_some() {
        return Err(ParseError::Record {
            line,
            msg: "trailing tokens".into(),
        });
    }
    if u == v {
        return Err(ParseError::SelfLoop { line, vertex: u });
    }
    Ok((u, v))
}

fn is_skippable(line: &str) -> bool {
    let t = line.trim();
    t.is_empty() || t == "c" || t.starts_with("c ") || t.starts_with("c\t")
}

/// Parses an instance file into a 0-indexed graph.
pub fn parse_instance(text: &str) -> Result<Graph, ParseError> {
    let mut graph: Option<(Graph, usize)> = None;
    let mut found = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        if is_skippable(raw) {
            continue;
        }
        let mut toks = raw.split_whitespace();
        match toks.next() {
            Some("p") => {
                if graph.is_some() {
                    return Err(ParseError::Header {
                        line,
                        msg: "duplicate header".into(),
                    });
                }
                if toks.next() != Some("edge") {
                    return Err(ParseError::Header {
                        line,
                        msg: "expected 'p edge <n> <m>'".into(),
                    });
                }
                let header = |tok: Option<&str>, what: &str| {
                    tok.and_then(|t| t.parse::<usize>().ok())
                        .ok_or_else(|| ParseError::Header {
                            line,
                            msg: format!("invalid {what}"),
                        })
                };
                let n = header(toks.next(), "vertex count")?;
                let m = header(toks.next(), "edge count")?;
                if toks.next().is_some() {
                    return Err(ParseError::Header {
                        line,
                        msg: "trailing tokens".into(),
                    });
                }
                graph = Some((Graph::new(n), m));
            }
            Some("e") => {
                let Some((g, _)) = graph.as_mut() else {
                    return Err(ParseError::Record {
                        line,
                        msg: "edge before header".into(),
                    });
                };
                let (u, v) = parse_edge_line(toks, line)?;
                let n = g.n();
                for x in [u, v] {
                    if x == 0 || x > n {
                        return Err(ParseError::OutOfRange { line, vertex: x, n });
                    }
                }
                if g.has_edge(u - 1, v - 1) {
                    return Err(ParseError::Duplicate {
                        line,
                        u: u.min(v),
                        v: u.max(v),
                    });
                }
                g.add_edge(u - 1, v - 1).expect("validated endpoints");
                found += 1;
            }
            _ => return Err(ParseError::Unrecognized { line }),
        }
    }
    let (g, declared) = graph.ok_or(ParseError::MissingHeader)?;
    if declared != found {
        return Err(ParseError::EdgeCount { declared, found });
    }
    Ok(g)
}

/// Parses a deletion-set file into 0-indexed edges.
///
/// Endpoints are not range-checked here; membership in a graph is the
/// certificate checker's concern.
pub fn parse_edge_list(text: &str) -> Result<EdgeSet, ParseError> {
    let mut out = EdgeSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        if is_skippable(raw) {
            continue;
        }
        let mut toks = raw.split_whitespace();
        if toks.next() != Some("e") {
            return Err(ParseError::Unrecognized { line });
        }
        let (u, v) = parse_edge_line(toks, line)?;
        if u == 0 || v == 0 {
            return Err(ParseError::OutOfRange {
                line,
                vertex: 0,
                n: usize::MAX,
            });
        }
        if !out.insert(Edge::new(u - 1, v - 1)) {
            return Err(ParseError::Duplicate {
                line,
                u: u.min(v),
                v: u.max(v),
            });
        }
    }
    Ok(out)
}

/// `e u v` lines, 1-indexed, sorted.
pub fn render_edges(f: &EdgeSet) -> String {
    let mut out = String::new();
    for e in f {
        writeln!(out, "e {} {}", e.u() + 1, e.v() + 1).unwrap();
    }
    out
}

/// Renders a graph in instance format, preceded by the given comment lines.
pub fn render_instance(g: &Graph, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        writeln!(out, "c {c}").unwrap();
    }
    writeln!(out, "p edge {} {}", g.n(), g.m()).unwrap();
    out.push_str(&render_edges(&g.edge_set()));
    out
}
