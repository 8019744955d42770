//! Step-by-step execution of a brushing plan.
//!
//! Vertices fire one at a time in the plan's order. A vertex that is not
//! isolated may fire once it holds at least `deg⁺(v)` brushes; an isolated
//! vertex needs one brush. Firing sends at least one brush down every
//! out-arc, cleaning the vertex and its out-arcs. A brush that lands on an
//! already-fired vertex stays there for good.
//!
//! Brushes are tracked individually. Initial brushes are numbered vertex by
//! vertex (all of vertex 0's first), and when a vertex fires its
//! lowest-numbered brushes go down its out-arcs in dispatch order: arcs to
//! vertices that have not fired yet by increasing head, then arcs to fired
//! vertices by increasing head.

use serde::{Deserialize, Serialize};

use crate::error::{BrushError, Result};
use crate::graph::{is_permutation, Arc, Digraph};

/// Number of brushes on one arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ArcFlow {
    pub u: usize,
    pub v: usize,
    pub f: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BrushPlan {
    pub initial: Vec<u64>,
    pub order: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flows: Option<Vec<ArcFlow>>,
}

impl BrushPlan {
    pub fn new(initial: Vec<u64>, order: Vec<usize>) -> Self {
        BrushPlan {
            initial,
            order,
            flows: None,
        }
    }

    pub fn with_flows(mut self, mut flows: Vec<ArcFlow>) -> Self {
        flows.sort_unstable();
        self.flows = Some(flows);
        self
    }

    pub fn total(&self) -> u64 {
        self.initial.iter().sum()
    }

    /// Firing position of every vertex.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (i, &v) in self.order.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub t: usize,
    pub brushes: Vec<u64>,
    pub clean_vertices: Vec<usize>,
    pub clean_arcs: Vec<Arc>,
}

/// Everything that happened during a run: the configuration after each
/// firing, the realized arc flows and the route of every brush.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CleaningTrace {
    pub steps: Vec<TraceStep>,
    pub total: u64,
    #[serde(default)]
    pub order: Vec<usize>,
    #[serde(default)]
    pub flows: Vec<ArcFlow>,
    /// Vertices visited by brush `i`, starting where it was placed.
    #[serde(default)]
    pub brush_paths: Vec<Vec<usize>>,
}

impl CleaningTrace {
    pub fn initial_configuration(&self) -> &[u64] {
        &self.steps[0].brushes
    }

    pub fn final_configuration(&self) -> &[u64] {
        &self.steps.last().expect("trace has a step 0").brushes
    }

    /// Every vertex and every arc of `g` is clean at the last step.
    pub fn is_complete(&self, g: &Digraph) -> bool {
        self.steps.len() == g.n() + 1
            && self.steps.last().is_some_and(|s| {
                s.clean_vertices.len() == g.n() && s.clean_arcs.len() == g.arc_count()
            })
    }

    /// The plan that replays this trace with explicit flows.
    pub fn to_plan(&self) -> BrushPlan {
        BrushPlan::new(self.initial_configuration().to_vec(), self.order.clone())
            .with_flows(self.flows.clone())
    }

    /// Largest number of distinct vertices any single brush has visited.
    /// Equals `n` exactly when some brush travels a Hamiltonian path.
    pub fn max_vertices_visited(&self) -> usize {
        self.brush_paths
            .iter()
            .map(|p| p.iter().collect::<std::collections::BTreeSet<_>>().len())
            .max()
            .unwrap_or(0)
    }
}

/// Brushes a vertex must hold before it may fire.
pub fn firing_threshold(g: &Digraph, v: usize) -> u64 {
    if g.is_isolated(v) {
        1
    } else {
        g.out_degree(v) as u64
    }
}

/// Splits `have` brushes at `v` over its out-arcs: one per arc, then the
/// surplus one at a time over arcs to unfired heads, lowest head first,
/// round-robin. With no unfired out-neighbour the surplus stays at `v`.
pub fn default_dispersal(g: &Digraph, fired: &[bool], v: usize, have: u64) -> Vec<ArcFlow> {
    let heads = g.out_neighbors(v);
    let mut flows: Vec<ArcFlow> = heads
        .iter()
        .map(|&w| ArcFlow { u: v, v: w, f: 1 })
        .collect();
    let open: Vec<usize> = (0..heads.len()).filter(|&i| !fired[heads[i]]).collect();
    let surplus = have.saturating_sub(heads.len() as u64);
    if !open.is_empty() && surplus > 0 {
        let k = open.len() as u64;
        for (rank, &i) in open.iter().enumerate() {
            flows[i].f += surplus / k + u64::from((rank as u64) < surplus % k);
        }
    }
    flows
}

/// Executes `plan` on `g`.
pub fn run(g: &Digraph, plan: &BrushPlan) -> Result<CleaningTrace> {
    let n = g.n();
    if plan.initial.len() != n {
        return Err(BrushError::InvalidPlan(format!(
            "initial configuration has {} entries for {n} vertices",
            plan.initial.len()
        )));
    }
    if plan.order.len() != n || !is_permutation(&plan.order) {
        return Err(BrushError::InvalidPlan(
            "order is not a permutation of the vertices".into(),
        ));
    }
    let explicit = plan
        .flows
        .as_deref()
        .map(|f| explicit_flow_table(g, f))
        .transpose()?;

    let mut holdings: Vec<Vec<usize>> = Vec::with_capacity(n);
    let mut brush_paths = Vec::new();
    for (v, &count) in plan.initial.iter().enumerate() {
        let first = brush_paths.len();
        brush_paths.extend((0..count).map(|_| vec![v]));
        holdings.push((first..brush_paths.len()).collect());
    }

    let mut fired = vec![false; n];
    let mut clean_vertices = Vec::with_capacity(n);
    let mut clean_arcs = Vec::with_capacity(g.arc_count());
    let mut realized = Vec::with_capacity(g.arc_count());
    let snapshot = |t: usize, holdings: &[Vec<usize>], cv: &[usize], ca: &[Arc]| {
        let mut clean_vertices = cv.to_vec();
        clean_vertices.sort_unstable();
        let mut clean_arcs = ca.to_vec();
        clean_arcs.sort_unstable();
        TraceStep {
            t,
            brushes: holdings.iter().map(|h| h.len() as u64).collect(),
            clean_vertices,
            clean_arcs,
        }
    };
    let mut steps = vec![snapshot(0, &holdings, &clean_vertices, &clean_arcs)];

    for (i, &v) in plan.order.iter().enumerate() {
        let step = i + 1;
        let have = holdings[v].len() as u64;
        let need = firing_threshold(g, v);
        if have < need {
            return Err(BrushError::InsufficientBrushes {
                vertex: v,
                step,
                have,
                need,
            });
        }
        let flows = match &explicit {
            Some(table) => {
                let flows: Vec<ArcFlow> = g
                    .out_neighbors(v)
                    .iter()
                    .map(|&w| ArcFlow {
                        u: v,
                        v: w,
                        f: table[g.arc_index(v, w).unwrap()],
                    })
                    .collect();
                let sent: u64 = flows.iter().map(|a| a.f).sum();
                if sent > have {
                    return Err(BrushError::InsufficientBrushes {
                        vertex: v,
                        step,
                        have,
                        need: sent,
                    });
                }
                flows
            }
            None => default_dispersal(g, &fired, v, have),
        };

        // unfired heads first, then fired ones, each by increasing index
        let mut dispatch = flows.clone();
        dispatch.sort_by_key(|a| (fired[a.v], a.v));
        let mut pool = std::mem::take(&mut holdings[v]).into_iter();
        for arc in &dispatch {
            for _ in 0..arc.f {
                let brush = pool.next().expect("flow total checked against holdings");
                brush_paths[brush].push(arc.v);
                holdings[arc.v].push(brush);
            }
            clean_arcs.push((arc.u, arc.v));
        }
        holdings[v] = pool.collect();
        for arc in &dispatch {
            holdings[arc.v].sort_unstable();
        }
        fired[v] = true;
        clean_vertices.push(v);
        realized.extend(flows);
        steps.push(snapshot(step, &holdings, &clean_vertices, &clean_arcs));
    }

    realized.sort_unstable();
    Ok(CleaningTrace {
        steps,
        total: plan.total(),
        order: plan.order.clone(),
        flows: realized,
        brush_paths,
    })
}

fn explicit_flow_table(g: &Digraph, flows: &[ArcFlow]) -> Result<Vec<u64>> {
    let mut table = vec![0u64; g.arc_count()];
    for a in flows {
        let illegal = |reason: &str| BrushError::IllegalFlow {
            arc: (a.u, a.v),
            reason: reason.into(),
        };
        let idx = g
            .arc_index(a.u, a.v)
            .ok_or_else(|| illegal("not an arc of the graph"))?;
        if table[idx] != 0 {
            return Err(illegal("listed twice"));
        }
        if a.f == 0 {
            return Err(illegal("every arc needs at least one brush"));
        }
        table[idx] = a.f;
    }
    if let Some(idx) = table.iter().position(|&f| f == 0) {
        return Err(BrushError::IllegalFlow {
            arc: g.arcs()[idx],
            reason: "no flow given for this arc".into(),
        });
    }
    Ok(table)
}
