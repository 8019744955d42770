//! Graphviz export.
//!
//! Without a step every vertex and arc is drawn dirty. With a step the
//! drawing follows the usual drawing convention: dirty vertices are filled
//! black, clean vertices are white, dirty arcs are thick solid lines, clean
//! arcs are dashed, and a vertex holding brushes shows the count as its
//! label.

use std::collections::HashSet;
use std::fmt::Write;

use super::{Arc, Digraph};

pub const DIRTY_VERTEX_STYLE: &str = "style=filled, fillcolor=black, fontcolor=white";
pub const CLEAN_VERTEX_STYLE: &str = "style=filled, fillcolor=white, fontcolor=black";
pub const DIRTY_ARC_STYLE: &str = "style=solid, penwidth=2";
pub const CLEAN_ARC_STYLE: &str = "style=dashed, penwidth=1";

/// One time step of a cleaning trace, borrowed for rendering.
#[derive(Debug, Clone, Copy)]
pub struct DotStep<'a> {
    pub t: usize,
    pub brushes: &'a [u64],
    pub clean_vertices: &'a [usize],
    pub clean_arcs: &'a [Arc],
}

pub fn export_dot(g: &Digraph, step: Option<DotStep<'_>>) -> String {
    let clean_v: HashSet<usize> = step
        .map(|s| s.clean_vertices.iter().copied().collect())
        .unwrap_or_default();
    let clean_a: HashSet<Arc> = step
        .map(|s| s.clean_arcs.iter().copied().collect())
        .unwrap_or_default();

    let mut out = String::new();
    out.push_str("digraph G {\n");
    if let Some(s) = step {
        let _ = writeln!(out, "  label=\"t={}\";", s.t);
    }
    out.push_str("  node [shape=circle, fixedsize=true, width=0.4];\n");
    for v in 0..g.n() {
        let style = if clean_v.contains(&v) {
            CLEAN_VERTEX_STYLE
        } else {
            DIRTY_VERTEX_STYLE
        };
        let count = step.map(|s| s.brushes[v]).unwrap_or(0);
        let label = if count > 0 {
            count.to_string()
        } else {
            String::new()
        };
        let _ = writeln!(out, "  {v} [label=\"{label}\", xlabel=\"v{v}\", {style}];");
    }
    for &(u, v) in g.arcs() {
        let style = if clean_a.contains(&(u, v)) {
            CLEAN_ARC_STYLE
        } else {
            DIRTY_ARC_STYLE
        };
        let _ = writeln!(out, "  {u} -> {v} [{style}];");
    }
    out.push_str("}\n");
    out
}
