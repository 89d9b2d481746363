//! Line-oriented text format for hypergraphs and constrained bipartite
//! graphs. Blank lines and lines starting with `#` are ignored.
//!
//! Hypergraph:
//!
//! ```text
//! n m h
//! v_1 v_2 ... v_h     (m lines, one hyperedge each)
//! ```
//!
//! `h` is the common hyperedge size, or 0 when sizes differ.
//!
//! Bipartite graph:
//!
//! ```text
//! a_count b_count e
//! a b                 (e lines)
//! w_a ...             (a_count caps)
//! w_b ...             (b_count caps)
//! ```
//!
//! Cap lines are read as a single token stream, so an empty side may leave
//! its line blank or omit it.

use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{ConstrainedBipartiteGraph, GraphError, Hypergraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unexpected end of input: {0}")]
    Truncated(String),
    #[error("trailing content at line {0}")]
    Trailing(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn numbers<T: FromStr>(line: usize, s: &str) -> Result<Vec<T>, ParseError> {
    s.split_whitespace()
        .map(|tok| {
            tok.parse()
                .map_err(|_| ParseError::Syntax { line, message: format!("expected a nonnegative integer, got {tok:?}") })
        })
        .collect()
}

fn header(line: usize, s: &str) -> Result<[usize; 3], ParseError> {
    let v: Vec<usize> = numbers(line, s)?;
    v.try_into()
        .map_err(|v: Vec<usize>| ParseError::Syntax { line, message: format!("header needs 3 fields, got {}", v.len()) })
}

pub fn write_hypergraph(h: &Hypergraph) -> String {
    let mut out = String::new();
    let size = h.uniform_size().unwrap_or(0);
    writeln!(out, "{} {} {}", h.vertex_count(), h.edge_count(), size).unwrap();
    for e in h.edges() {
        let line: Vec<String> = e.iter().map(u32::to_string).collect();
        writeln!(out, "{}", line.join(" ")).unwrap();
    }
    out
}

pub fn parse_hypergraph(text: &str) -> Result<Hypergraph, ParseError> {
    let mut lines = content_lines(text);
    let (hl, hs) = lines.next().ok_or_else(|| ParseError::Truncated("missing header".into()))?;
    let [n, m, size] = header(hl, hs)?;
    let mut edges = Vec::with_capacity(m);
    for i in 0..m {
        let (line, s) = lines.next().ok_or_else(|| ParseError::Truncated(format!("expected {m} hyperedges, got {i}")))?;
        let e: Vec<usize> = numbers(line, s)?;
        if size != 0 && e.len() != size {
            return Err(ParseError::Syntax { line, message: format!("hyperedge has {} vertices, header says {size}", e.len()) });
        }
        edges.push(e);
    }
    if let Some((line, _)) = lines.next() {
        return Err(ParseError::Trailing(line));
    }
    Ok(Hypergraph::new(n, edges)?)
}

pub fn write_bipartite(g: &ConstrainedBipartiteGraph) -> String {
    let mut out = String::new();
    writeln!(out, "{} {} {}", g.a_count(), g.b_count(), g.edges().len()).unwrap();
    for &(a, b) in g.edges() {
        writeln!(out, "{a} {b}").unwrap();
    }
    for caps in [g.caps_a(), g.caps_b()] {
        let line: Vec<String> = caps.iter().map(u32::to_string).collect();
        writeln!(out, "{}", line.join(" ")).unwrap();
    }
    out
}

pub fn parse_bipartite(text: &str) -> Result<ConstrainedBipartiteGraph, ParseError> {
    let mut lines = content_lines(text);
    let (hl, hs) = lines.next().ok_or_else(|| ParseError::Truncated("missing header".into()))?;
    let [a_count, b_count, e] = header(hl, hs)?;
    let mut edges = Vec::with_capacity(e);
    for i in 0..e {
        let (line, s) = lines.next().ok_or_else(|| ParseError::Truncated(format!("expected {e} edges, got {i}")))?;
        match numbers::<u32>(line, s)?.as_slice() {
            &[a, b] => edges.push((a, b)),
            other => {
                return Err(ParseError::Syntax { line, message: format!("edge line needs 2 fields, got {}", other.len()) })
            }
        }
    }
    let mut caps = Vec::with_capacity(a_count + b_count);
    for (line, s) in lines {
        caps.extend(numbers::<u32>(line, s)?);
        if caps.len() > a_count + b_count {
            return Err(ParseError::Trailing(line));
        }
    }
    if caps.len() < a_count + b_count {
        return Err(ParseError::Truncated(format!("expected {} caps, got {}", a_count + b_count, caps.len())));
    }
    let caps_b = caps.split_off(a_count);
    Ok(ConstrainedBipartiteGraph::new(a_count, b_count, edges, caps, caps_b)?)
}
