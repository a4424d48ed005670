//! Text formats for [`ExplicitGraph`]: the `reeb v1` edge list and DOT.
//!
//! Edge list:
//!
//! ```text
//! reeb v1
//! # comments start with '#'
//! vertices 3
//! edge 0 1
//! edge 1 2
//! ```

use std::collections::VecDeque;
use std::fmt::Write as _;

use thiserror::Error;

use crate::tree::{ExplicitGraph, GraphError};

pub const HEADER: &str = "reeb v1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct EdgeListError {
    /// 1-based.
    pub line: usize,
    /// 1-based.
    pub column: usize,
    pub message: String,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> EdgeListError {
    EdgeListError {
        line,
        column,
        message: message.into(),
    }
}

/// Whitespace-separated tokens of a line with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn number(line: usize, (column, text): (usize, &str)) -> Result<usize, EdgeListError> {
    text.parse().map_err(|_| {
        err(
            line,
            column,
            format!("expected a non-negative integer, found '{text}'"),
        )
    })
}

pub fn parse_edge_list(text: &str) -> Result<ExplicitGraph, EdgeListError> {
    let mut header_seen = false;
    let mut vertices: Option<usize> = None;
    let mut edges = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let toks = tokens(raw);
        let Some(&(col, first)) = toks.first() else {
            continue;
        };
        if first.starts_with('#') {
            continue;
        }
        if !header_seen {
            if toks.len() == 2 && first == "reeb" && toks[1].1 == "v1" {
                header_seen = true;
                continue;
            }
            return Err(err(line, col, format!("expected header '{HEADER}'")));
        }
        match first {
            "vertices" => {
                if vertices.is_some() {
                    return Err(err(line, col, "duplicate 'vertices' line"));
                }
                if toks.len() != 2 {
                    return Err(err(line, col, "expected 'vertices N'"));
                }
                let n = number(line, toks[1])?;
                if n == 0 {
                    return Err(err(line, toks[1].0, "vertex count must be at least 1"));
                }
                vertices = Some(n);
            }
            "edge" => {
                let Some(n) = vertices else {
                    return Err(err(line, col, "'edge' before 'vertices'"));
                };
                if toks.len() != 3 {
                    return Err(err(line, col, "expected 'edge U V'"));
                }
                let u = number(line, toks[1])?;
                let v = number(line, toks[2])?;
                for (tok, x) in [(toks[1], u), (toks[2], v)] {
                    if x >= n {
                        return Err(err(line, tok.0, format!("vertex {x} out of range 0..{n}")));
                    }
                }
                edges.push((u, v));
            }
            other => return Err(err(line, col, format!("unknown directive '{other}'"))),
        }
    }

    if !header_seen {
        return Err(err(
            last_line.max(1),
            1,
            format!("missing header '{HEADER}'"),
        ));
    }
    let n = vertices.ok_or_else(|| err(last_line, 1, "missing 'vertices' line"))?;
    ExplicitGraph::new(n, edges).map_err(|e: GraphError| err(last_line, 1, e.to_string()))
}

pub fn write_edge_list(g: &ExplicitGraph) -> String {
    let mut out = String::with_capacity(16 + 12 * g.edges().len());
    out.push_str(HEADER);
    out.push('\n');
    let _ = writeln!(out, "vertices {}", g.vertex_count());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "edge {u} {v}");
    }
    out
}

/// Longest-path level from the sources. `None` for vertices on or behind a
/// directed cycle.
pub fn levels(g: &ExplicitGraph) -> Vec<Option<usize>> {
    let n = g.vertex_count();
    let mut indeg = g.in_degrees();
    let mut out = vec![Vec::new(); n];
    for &(u, v) in g.edges() {
        out[u].push(v);
    }
    let mut level = vec![None; n];
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    for &v in &queue {
        level[v] = Some(0);
    }
    while let Some(u) = queue.pop_front() {
        let lu = level[u].expect("queued vertices have a level");
        for &v in &out[u] {
            level[v] = Some(level[v].map_or(lu + 1, |lv: usize| lv.max(lu + 1)));
            indeg[v] -= 1;
            if indeg[v] == 0 {
                queue.push_back(v);
            }
        }
    }
    // vertices never released from the queue sit on a cycle
    for v in 0..n {
        if indeg[v] > 0 {
            level[v] = None;
        }
    }
    level
}

/// Deterministic DOT rendering. Minima and maxima are ellipses, degree-3
/// saddles points, the degree-2 saddle a double circle; vertices at the same
/// longest-path level share a rank.
pub fn write_dot(g: &ExplicitGraph) -> String {
    let degree = g.degrees();
    let indeg = g.in_degrees();
    let outdeg = g.out_degrees();
    let level = levels(g);

    let mut out = String::new();
    out.push_str("digraph reeb {\n");
    out.push_str("  rankdir=BT;\n");
    for v in 0..g.vertex_count() {
        let (shape, label) = match degree[v] {
            1 if indeg[v] == 0 => ("ellipse", "min"),
            1 if outdeg[v] == 0 => ("ellipse", "max"),
            2 => ("doublecircle", ""),
            3 => ("point", ""),
            _ => ("box", "?"),
        };
        let _ = writeln!(out, "  {v} [shape={shape}, label=\"{label}\"];");
    }
    let max_level = level.iter().flatten().copied().max();
    if let Some(max_level) = max_level {
        for l in 0..=max_level {
            let members: Vec<String> = (0..g.vertex_count())
                .filter(|&v| level[v] == Some(l))
                .map(|v| v.to_string())
                .collect();
            if !members.is_empty() {
                let _ = writeln!(out, "  {{ rank=same; {}; }}", members.join("; "));
            }
        }
    }
    let mut edges = g.edges().to_vec();
    edges.sort_unstable();
    for (u, v) in edges {
        let _ = writeln!(out, "  {u} -> {v};");
    }
    out.push_str("}\n");
    out
}
