//! Cheapest initial configuration for a fixed firing order.
//!
//! Brushes are modeled as units of flow from a super-source `s` (initial
//! placement) to a super-sink `t` (where they finally rest). An arc fired
//! forward (tail before head) becomes a network arc with lower bound 1; an
//! arc fired backward strands its brush at the head, so it becomes `tail → t`
//! with lower bound 1. Every vertex also gets `s → v` for its initial brushes
//! and `v → t` for brushes it keeps (lower bound 1 when `v` is isolated).
//! Since the out-arc lower bounds at `v` add up to `deg⁺(v)`, conservation
//! alone enforces the firing threshold.

mod network;

use serde::{Deserialize, Serialize};

use crate::engine::{ArcFlow, BrushPlan};
use crate::error::{BrushError, Result};
use crate::graph::{is_permutation, Digraph};

pub use network::{solve_min_flow, FlowNetwork, NetArc};

/// Minimum-total configuration for one order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderSolution {
    pub total: u64,
    pub initial: Vec<u64>,
    pub flows: Vec<ArcFlow>,
}

impl OrderSolution {
    pub fn into_plan(self, order: Vec<usize>) -> BrushPlan {
        BrushPlan::new(self.initial, order).with_flows(self.flows)
    }
}

/// Arc layout of the network built by [`build_network`]: graph arc `i`
/// (in [`Digraph::arcs`] order) is network arc `i`, then `s → v` for every
/// vertex, then `v → t` for every vertex.
pub fn build_network(g: &Digraph, order: &[usize]) -> Result<FlowNetwork> {
    check_order(g, order)?;
    Ok(network_with_source_bounds(g, order, &vec![None; g.n()]))
}

fn check_order(g: &Digraph, order: &[usize]) -> Result<()> {
    if order.len() != g.n() || !is_permutation(order) {
        return Err(BrushError::InvalidPlan(
            "order is not a permutation of the vertices".into(),
        ));
    }
    Ok(())
}

fn network_with_source_bounds(
    g: &Digraph,
    order: &[usize],
    fixed: &[Option<(u64, u64)>],
) -> FlowNetwork {
    let n = g.n();
    let (s, t) = (n, n + 1);
    let cap = (g.arc_count() + n) as u64;
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut arcs = Vec::with_capacity(g.arc_count() + 2 * n);
    for &(u, v) in g.arcs() {
        let to = if pos[u] < pos[v] { v } else { t };
        arcs.push(NetArc {
            from: u,
            to,
            lower: 1,
            upper: cap,
        });
    }
    for (v, bound) in fixed.iter().enumerate() {
        let (lower, upper) = bound.unwrap_or((0, cap));
        arcs.push(NetArc {
            from: s,
            to: v,
            lower,
            upper,
        });
    }
    for v in 0..n {
        let lower = u64::from(g.is_isolated(v));
        arcs.push(NetArc {
            from: v,
            to: t,
            lower,
            upper: cap,
        });
    }
    FlowNetwork {
        node_count: n + 2,
        source: s,
        sink: t,
        arcs,
    }
}

/// Smallest total of initial brushes that lets `order` clean `g`.
pub fn min_total_for_order(g: &Digraph, order: &[usize]) -> Result<u64> {
    let net = build_network(g, order)?;
    let flow = solve_min_flow(&net)?;
    Ok(net.source_outflow(&flow))
}

/// Optimal configuration for `order`. Among optimal configurations the one
/// placing as many brushes as possible on the first vertex to fire, then
/// the second, and so on, is returned.
pub fn min_initial_for_order(g: &Digraph, order: &[usize]) -> Result<OrderSolution> {
    let n = g.n();
    let best = min_total_for_order(g, order)?;
    let mut fixed: Vec<Option<(u64, u64)>> = vec![None; n];
    let mut placed = 0;
    for &v in order {
        let room = best - placed;
        // largest x such that forcing at least x brushes onto v keeps the optimum
        let (mut lo, mut hi) = (0, room);
        while lo < hi {
            let mid = (lo + hi).div_ceil(2);
            fixed[v] = Some((mid, room));
            let net = network_with_source_bounds(g, order, &fixed);
            let ok = solve_min_flow(&net).is_ok_and(|f| net.source_outflow(&f) == best);
            if ok {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        fixed[v] = Some((lo, lo));
        placed += lo;
    }
    let net = network_with_source_bounds(g, order, &fixed);
    let flow = solve_min_flow(&net)?;
    let m = g.arc_count();
    let initial: Vec<u64> = flow[m..m + n].to_vec();
    let flows = g
        .arcs()
        .iter()
        .zip(&flow)
        .map(|(&(u, v), &f)| ArcFlow { u, v, f })
        .collect();
    Ok(OrderSolution {
        total: initial.iter().sum(),
        initial,
        flows,
    })
}
