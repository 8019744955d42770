//! Edge-list text format.
//!
//! ```text
//! # optional comments, anywhere after '#'
//! n m
//! u v      (m lines, 0-indexed)
//! ```

use std::fmt::Write;

use super::Digraph;
use crate::error::{BrushError, Result};

pub fn parse(text: &str) -> Result<Digraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_line, header) = lines.next().ok_or(BrushError::Parse {
        line: 1,
        message: "missing \"n m\" header".into(),
    })?;
    let [n, m] = parse_pair(header_line, header)?;

    let mut arcs = Vec::with_capacity(m);
    let mut seen = std::collections::HashSet::with_capacity(m);
    for (line, text) in lines {
        if arcs.len() == m {
            return Err(BrushError::Parse {
                line,
                message: format!("more than the {m} declared arcs"),
            });
        }
        let [u, v] = parse_pair(line, text)?;
        for vertex in [u, v] {
            if vertex >= n {
                return Err(BrushError::IndexOutOfRange { line, vertex, n });
            }
        }
        if u == v {
            return Err(BrushError::Parse {
                line,
                message: format!("loop at vertex {u}"),
            });
        }
        if !seen.insert((u, v)) {
            return Err(BrushError::Parse {
                line,
                message: format!("duplicate arc {u} {v}"),
            });
        }
        arcs.push((u, v));
    }
    if arcs.len() != m {
        return Err(BrushError::Parse {
            line: text.lines().count().max(1),
            message: format!("declared {m} arcs, found {}", arcs.len()),
        });
    }
    Digraph::new(n, arcs)
}

fn parse_pair(line: usize, text: &str) -> Result<[usize; 2]> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    let err = |message: String| BrushError::Parse { line, message };
    if fields.len() != 2 {
        return Err(err(format!("expected two integers, got {:?}", text)));
    }
    let mut out = [0; 2];
    for (slot, f) in out.iter_mut().zip(&fields) {
        *slot = f
            .parse()
            .map_err(|_| err(format!("not a non-negative integer: {f:?}")))?;
    }
    Ok(out)
}

pub fn serialize(g: &Digraph) -> String {
    let mut s = String::with_capacity(8 + 8 * g.arc_count());
    let _ = writeln!(s, "{} {}", g.n(), g.arc_count());
    for &(u, v) in g.arcs() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}
