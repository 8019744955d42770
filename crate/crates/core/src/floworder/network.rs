//! Minimum flow with lower bounds.
//!
//! Phase one finds any feasible flow: lower bounds are moved into node
//! demands, an uncapacitated return arc `sink → source` closes the
//! circulation, and a maximum flow between auxiliary terminals has to
//! saturate every demand. Phase two drops the return arc and pushes as much
//! flow as possible from the sink back to the source through the residual
//! network, which lowers the source outflow without breaking any lower
//! bound.

use serde::{Deserialize, Serialize};

use crate::error::{BrushError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetArc {
    pub from: usize,
    pub to: usize,
    pub lower: u64,
    pub upper: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowNetwork {
    pub node_count: usize,
    pub source: usize,
    pub sink: usize,
    pub arcs: Vec<NetArc>,
}

impl FlowNetwork {
    /// Net outflow of the source under `flow`.
    pub fn source_outflow(&self, flow: &[u64]) -> u64 {
        let out: u64 = self
            .arcs
            .iter()
            .zip(flow)
            .filter(|(a, _)| a.from == self.source)
            .map(|(_, f)| f)
            .sum();
        let back: u64 = self
            .arcs
            .iter()
            .zip(flow)
            .filter(|(a, _)| a.to == self.source)
            .map(|(_, f)| f)
            .sum();
        out - back
    }

    /// Bounds respected and flow conserved at every inner node.
    pub fn is_feasible(&self, flow: &[u64]) -> bool {
        if flow.len() != self.arcs.len() {
            return false;
        }
        let mut balance = vec![0i128; self.node_count];
        for (a, &f) in self.arcs.iter().zip(flow) {
            if f < a.lower || f > a.upper {
                return false;
            }
            balance[a.from] -= f as i128;
            balance[a.to] += f as i128;
        }
        (0..self.node_count)
            .filter(|&v| v != self.source && v != self.sink)
            .all(|v| balance[v] == 0)
    }
}

/// Feasible integral flow of minimum source outflow, one value per arc.
pub fn solve_min_flow(net: &FlowNetwork) -> Result<Vec<u64>> {
    let nodes = net.node_count;
    let (ss, tt) = (nodes, nodes + 1);
    let mut dinic = Dinic::new(nodes + 2);
    let mut demand = vec![0i64; nodes];
    let mut edge_of = Vec::with_capacity(net.arcs.len());
    for a in &net.arcs {
        if a.lower > a.upper {
            return Err(BrushError::InfeasibleNetwork);
        }
        edge_of.push(dinic.add_edge(a.from, a.to, (a.upper - a.lower) as i64));
        demand[a.to] += a.lower as i64;
        demand[a.from] -= a.lower as i64;
    }
    let ret = dinic.add_edge(net.sink, net.source, i64::MAX / 4);
    let mut required = 0;
    let mut aux = Vec::new();
    for (v, &d) in demand.iter().enumerate() {
        if d > 0 {
            aux.push(dinic.add_edge(ss, v, d));
            required += d;
        } else if d < 0 {
            aux.push(dinic.add_edge(v, tt, -d));
        }
    }
    if dinic.max_flow(ss, tt) != required {
        return Err(BrushError::InfeasibleNetwork);
    }
    dinic.remove_edge(ret);
    for e in aux {
        dinic.remove_edge(e);
    }
    dinic.max_flow(net.sink, net.source);
    Ok(net
        .arcs
        .iter()
        .zip(&edge_of)
        .map(|(a, &e)| a.lower + dinic.flow_on(e) as u64)
        .collect())
}

struct Edge {
    to: usize,
    cap: i64,
    orig: i64,
}

/// Dinic's maximum flow on an adjacency-list residual graph.
struct Dinic {
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
    level: Vec<i32>,
    next: Vec<usize>,
}

impl Dinic {
    fn new(n: usize) -> Self {
        Dinic {
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
            level: vec![0; n],
            next: vec![0; n],
        }
    }

    fn add_edge(&mut self, from: usize, to: usize, cap: i64) -> usize {
        let id = self.edges.len();
        self.edges.push(Edge { to, cap, orig: cap });
        self.edges.push(Edge {
            to: from,
            cap: 0,
            orig: 0,
        });
        self.adj[from].push(id);
        self.adj[to].push(id + 1);
        id
    }

    fn remove_edge(&mut self, id: usize) {
        self.edges[id].cap = 0;
        self.edges[id ^ 1].cap = 0;
    }

    fn flow_on(&self, id: usize) -> i64 {
        self.edges[id].orig - self.edges[id].cap
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.level[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &e in &self.adj[v] {
                let Edge { to, cap, .. } = self.edges[e];
                if cap > 0 && self.level[to] < 0 {
                    self.level[to] = self.level[v] + 1;
                    queue.push_back(to);
                }
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, v: usize, t: usize, pushed: i64) -> i64 {
        if v == t {
            return pushed;
        }
        while self.next[v] < self.adj[v].len() {
            let e = self.adj[v][self.next[v]];
            let Edge { to, cap, .. } = self.edges[e];
            if cap > 0 && self.level[to] == self.level[v] + 1 {
                let got = self.dfs(to, t, pushed.min(cap));
                if got > 0 {
                    self.edges[e].cap -= got;
                    self.edges[e ^ 1].cap += got;
                    return got;
                }
            }
            self.next[v] += 1;
        }
        0
    }

    fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        if s == t {
            return 0;
        }
        let mut total = 0;
        while self.bfs(s, t) {
            self.next.iter_mut().for_each(|x| *x = 0);
            loop {
                let f = self.dfs(s, t, i64::MAX);
                if f == 0 {
                    break;
                }
                total += f;
            }
        }
        total
    }
}
