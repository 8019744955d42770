use thiserror::Error;

use crate::graph::Arc;

pub type Result<T, E = BrushError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BrushError {
    #[error("invalid family spec: {0}")]
    InvalidFamilySpec(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("vertex {vertex} out of range for a graph with {n} vertices (line {line})")]
    IndexOutOfRange {
        line: usize,
        vertex: usize,
        n: usize,
    },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid plan: {0}")]
    InvalidPlan(String),

    #[error("vertex {vertex} cannot fire at step {step}: has {have} brushes, needs {need}")]
    InsufficientBrushes {
        vertex: usize,
        step: usize,
        have: u64,
        need: u64,
    },

    #[error("illegal flow on arc ({}, {}): {reason}", .arc.0, .arc.1)]
    IllegalFlow { arc: Arc, reason: String },

    #[error("flow network has no feasible flow")]
    InfeasibleNetwork,

    #[error("graph has {n} vertices, above the limit of {cap}")]
    TooLarge { n: usize, cap: usize },

    #[error("topological-only search requested on a cyclic graph")]
    TopoOnlyOnCyclic,

    #[error("graph contains a directed cycle")]
    NotAcyclic,

    #[error("graph is not a rooted tree")]
    NotRootedTree,

    #[error("underlying graph is not a tree")]
    NotATree,

    #[error("n = {0} is too small for this strategy")]
    BadSize(usize),

    #[error("({}, {}) is not an arc of the graph", .0.0, .0.1)]
    NotAnArc(Arc),

    #[error("not a path decomposition: {0}")]
    NotADecomposition(String),

    #[error("trace is incomplete: {0}")]
    IncompleteTrace(String),

    #[error("trace cannot be reversed: {0}")]
    NonMonotoneTrace(String),

    #[error("method {method} is not applicable: {reason}")]
    MethodNotApplicable { method: String, reason: String },
}
