//! Simple directed graphs on the vertex set `0..n`.
//!
//! Loops and parallel arcs are rejected; an antiparallel pair `(u, v)`,
//! `(v, u)` is allowed. Arcs are kept sorted so two equal graphs have the
//! same arc list and serialize byte-for-byte identically.

mod dot;
mod family;
mod io;

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use serde::{Deserialize, Serialize};

use crate::error::{BrushError, Result};

pub use dot::{
    export_dot, DotStep, CLEAN_ARC_STYLE, CLEAN_VERTEX_STYLE, DIRTY_ARC_STYLE, DIRTY_VERTEX_STYLE,
};
pub use family::{random_dag, random_rooted_tree, FamilySpec};
pub use io::{parse, serialize};

/// An ordered pair `(tail, head)`.
pub type Arc = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawDigraph", into = "RawDigraph")]
pub struct Digraph {
    n: usize,
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct RawDigraph {
    n: usize,
    arcs: Vec<Arc>,
}

impl TryFrom<RawDigraph> for Digraph {
    type Error = BrushError;

    fn try_from(raw: RawDigraph) -> Result<Self> {
        Digraph::new(raw.n, raw.arcs)
    }
}

impl From<Digraph> for RawDigraph {
    fn from(g: Digraph) -> Self {
        RawDigraph {
            n: g.n,
            arcs: g.arcs,
        }
    }
}

impl Digraph {
    pub fn new(n: usize, arcs: impl IntoIterator<Item = Arc>) -> Result<Self> {
        let mut arcs: Vec<Arc> = arcs.into_iter().collect();
        for &(u, v) in &arcs {
            if u >= n || v >= n {
                return Err(BrushError::InvalidGraph(format!(
                    "arc ({u}, {v}) has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(BrushError::InvalidGraph(format!("loop at vertex {u}")));
            }
        }
        arcs.sort_unstable();
        if let Some(w) = arcs.windows(2).find(|w| w[0] == w[1]) {
            return Err(BrushError::InvalidGraph(format!(
                "duplicate arc ({}, {})",
                w[0].0, w[0].1
            )));
        }
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        for &(u, v) in &arcs {
            out[u].push(v);
            inc[v].push(u);
        }
        for list in &mut inc {
            list.sort_unstable();
        }
        Ok(Digraph { n, arcs, out, inc })
    }

    pub fn edgeless(n: usize) -> Self {
        Digraph::new(n, []).expect("edgeless graph is valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.inc[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.inc[v].len()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        u < self.n && self.out[u].binary_search(&v).is_ok()
    }

    pub fn is_isolated(&self, v: usize) -> bool {
        self.out[v].is_empty() && self.inc[v].is_empty()
    }

    pub fn isolated_count(&self) -> usize {
        (0..self.n).filter(|&v| self.is_isolated(v)).count()
    }

    pub fn max_out_degree(&self) -> usize {
        (0..self.n).map(|v| self.out_degree(v)).max().unwrap_or(0)
    }

    /// `deg⁺(v) − deg⁻(v)`.
    pub fn excess(&self, v: usize) -> i64 {
        self.out_degree(v) as i64 - self.in_degree(v) as i64
    }

    /// Position of arc `(u, v)` in [`Digraph::arcs`].
    pub fn arc_index(&self, u: usize, v: usize) -> Option<usize> {
        self.arcs.binary_search(&(u, v)).ok()
    }

    /// Same vertices, every arc reversed.
    pub fn transpose(&self) -> Digraph {
        Digraph::new(self.n, self.arcs.iter().map(|&(u, v)| (v, u)))
            .expect("transpose of a simple digraph is simple")
    }

    pub fn without_arc(&self, u: usize, v: usize) -> Result<Digraph> {
        if !self.has_arc(u, v) {
            return Err(BrushError::NotAnArc((u, v)));
        }
        Digraph::new(self.n, self.arcs.iter().copied().filter(|&a| a != (u, v)))
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Digraph> {
        if perm.len() != self.n || !is_permutation(perm) {
            return Err(BrushError::InvalidGraph(
                "relabeling is not a permutation of the vertex set".into(),
            ));
        }
        Digraph::new(self.n, self.arcs.iter().map(|&(u, v)| (perm[u], perm[v])))
    }

    /// The subgraph induced by deleting `removed`, together with the map from
    /// new vertex indices to the original ones.
    pub fn delete_vertices(&self, removed: &[usize]) -> (Digraph, Vec<usize>) {
        let gone: BTreeSet<usize> = removed.iter().copied().collect();
        let kept: Vec<usize> = (0..self.n).filter(|v| !gone.contains(v)).collect();
        let mut new_index = vec![usize::MAX; self.n];
        for (i, &v) in kept.iter().enumerate() {
            new_index[v] = i;
        }
        let arcs = self
            .arcs
            .iter()
            .filter(|(u, v)| !gone.contains(u) && !gone.contains(v))
            .map(|&(u, v)| (new_index[u], new_index[v]));
        let sub = Digraph::new(kept.len(), arcs).expect("induced subgraph is simple");
        (sub, kept)
    }

    /// Lowest-index-first topological order, or `None` if `self` has a cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let mut indeg: Vec<usize> = (0..self.n).map(|v| self.in_degree(v)).collect();
        let mut ready: BinaryHeap<Reverse<usize>> = (0..self.n)
            .filter(|&v| indeg[v] == 0)
            .map(Reverse)
            .collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(Reverse(v)) = ready.pop() {
            order.push(v);
            for &w in &self.out[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    ready.push(Reverse(w));
                }
            }
        }
        (order.len() == self.n).then_some(order)
    }

    pub fn is_dag(&self) -> bool {
        self.topological_order().is_some()
    }

    /// True when every unordered pair of distinct vertices carries exactly
    /// one arc.
    pub fn is_tournament(&self) -> bool {
        self.arc_count() == self.n * self.n.saturating_sub(1) / 2
            && self.arcs.iter().all(|&(u, v)| !self.has_arc(v, u))
    }

    /// Both arcs between every pair of distinct vertices.
    pub fn is_complete(&self) -> bool {
        self.arc_count() == self.n * self.n.saturating_sub(1)
    }

    /// Underlying undirected graph is connected (the empty graph counts).
    pub fn is_weakly_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in self.out[v].iter().chain(&self.inc[v]) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Underlying undirected graph is a tree (no antiparallel pairs either).
    pub fn is_oriented_tree(&self) -> bool {
        self.n >= 1
            && self.arc_count() == self.n - 1
            && self.arcs.iter().all(|&(u, v)| !self.has_arc(v, u))
            && self.is_weakly_connected()
    }

    /// The root if every vertex is reached from it along a unique directed
    /// path.
    pub fn rooted_tree_root(&self) -> Option<usize> {
        if !self.is_oriented_tree() {
            return None;
        }
        let roots: Vec<usize> = (0..self.n).filter(|&v| self.in_degree(v) == 0).collect();
        match roots.as_slice() {
            [r] if (0..self.n).all(|v| v == *r || self.in_degree(v) == 1) => Some(*r),
            _ => None,
        }
    }

    pub fn classify(&self) -> StructureReport {
        let order = self.topological_order();
        StructureReport {
            is_dag: order.is_some(),
            sources: (0..self.n).filter(|&v| self.in_degree(v) == 0).collect(),
            sinks: (0..self.n).filter(|&v| self.out_degree(v) == 0).collect(),
            isolated: (0..self.n).filter(|&v| self.is_isolated(v)).collect(),
            topological_order: order,
        }
    }
}

/// Shape summary of a digraph. Isolated vertices are listed among both the
/// sources and the sinks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub is_dag: bool,
    pub sources: Vec<usize>,
    pub sinks: Vec<usize>,
    pub isolated: Vec<usize>,
    pub topological_order: Option<Vec<usize>>,
}

pub(crate) fn is_permutation(order: &[usize]) -> bool {
    let mut seen = vec![false; order.len()];
    for &v in order {
        if v >= order.len() || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}
