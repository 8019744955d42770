//! Path decompositions and the plans built from them.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::engine::{run, ArcFlow, BrushPlan, CleaningTrace};
use crate::error::{BrushError, Result};
use crate::graph::{Arc, Digraph};

/// Arc-disjoint directed paths covering every arc, with the excess
/// `deg⁺(v) − deg⁻(v)` of every vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathDecomposition {
    pub paths: Vec<Vec<usize>>,
    pub excess: Vec<i64>,
}

impl PathDecomposition {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// `½ Σ |d_v|`: the size of a perfect decomposition.
    pub fn perfect_size(&self) -> usize {
        self.excess
            .iter()
            .map(|d| d.unsigned_abs() as usize)
            .sum::<usize>()
            / 2
    }
}

/// Decomposition of a DAG into `½ Σ |d_v|` paths. At each vertex the
/// lowest-tail in-arcs are chained to the lowest-head out-arcs; unmatched
/// out-arcs start paths. Acyclicity turns every resulting trail into a path.
pub fn perfect_decomposition(g: &Digraph) -> Result<PathDecomposition> {
    if !g.is_dag() {
        return Err(BrushError::NotAcyclic);
    }
    let mut next: HashMap<Arc, usize> = HashMap::new();
    let mut starts = Vec::new();
    for v in 0..g.n() {
        let ins = g.in_neighbors(v);
        let outs = g.out_neighbors(v);
        let paired = ins.len().min(outs.len());
        for (&w, &x) in ins.iter().zip(outs).take(paired) {
            next.insert((w, v), x);
        }
        starts.extend(outs[paired..].iter().map(|&x| (v, x)));
    }
    let paths = starts
        .into_iter()
        .map(|(u, v)| {
            let mut path = vec![u, v];
            let mut arc = (u, v);
            while let Some(&x) = next.get(&arc) {
                path.push(x);
                arc = (arc.1, x);
            }
            path
        })
        .collect();
    Ok(PathDecomposition {
        paths,
        excess: (0..g.n()).map(|v| g.excess(v)).collect(),
    })
}

/// Checks that `paths` are directed paths of `g` using every arc exactly
/// once.
pub fn check_decomposition(g: &Digraph, paths: &[Vec<usize>]) -> Result<()> {
    let bad = |m: String| Err(BrushError::NotADecomposition(m));
    let mut used = vec![false; g.arc_count()];
    for p in paths {
        if p.len() < 2 {
            return bad(format!("path {p:?} has no arcs"));
        }
        let mut seen = vec![false; g.n()];
        for &v in p {
            if v >= g.n() || std::mem::replace(&mut seen[v], true) {
                return bad(format!("{p:?} is not a path of the graph"));
            }
        }
        for w in p.windows(2) {
            let Some(i) = g.arc_index(w[0], w[1]) else {
                return bad(format!("({}, {}) is not an arc", w[0], w[1]));
            };
            if std::mem::replace(&mut used[i], true) {
                return bad(format!("arc ({}, {}) used twice", w[0], w[1]));
            }
        }
    }
    match used.iter().position(|u| !u) {
        Some(i) => bad(format!("arc {:?} not covered", g.arcs()[i])),
        None => Ok(()),
    }
}

/// Longest-path depth of every vertex: 0 for sources, otherwise one more
/// than the deepest in-neighbour.
fn levels(g: &Digraph) -> Result<Vec<usize>> {
    let topo = g.topological_order().ok_or(BrushError::NotAcyclic)?;
    let mut level = vec![0; g.n()];
    for &v in &topo {
        level[v] = g
            .in_neighbors(v)
            .iter()
            .map(|&u| level[u] + 1)
            .max()
            .unwrap_or(0);
    }
    Ok(level)
}

/// One brush per path, placed at the path's first vertex and routed along
/// it. Vertices fire level by level (sources first), which is the
/// sequential form of firing each level at once. Isolated vertices, which no
/// path touches, get the single brush they need to fire.
pub fn plan_from_paths(g: &Digraph, m: &PathDecomposition) -> Result<BrushPlan> {
    check_decomposition(g, &m.paths)?;
    let level = levels(g)?;
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (level[v], v));
    let mut initial: Vec<u64> = (0..g.n()).map(|v| u64::from(g.is_isolated(v))).collect();
    for p in &m.paths {
        initial[p[0]] += 1;
    }
    let flows = g
        .arcs()
        .iter()
        .map(|&(u, v)| ArcFlow { u, v, f: 1 })
        .collect();
    Ok(BrushPlan::new(initial, order).with_flows(flows))
}

/// Plan for `transpose(g)` that runs `trace` backwards: brushes start where
/// the trace left them, fire in reverse order and retrace their routes in
/// the opposite direction, ending where they began. Needs every brush
/// movement in `trace` to go from an earlier-fired to a later-fired vertex,
/// which holds for any trace that fires a DAG in topological order.
pub fn transpose_plan(g: &Digraph, trace: &CleaningTrace) -> Result<BrushPlan> {
    if !trace.is_complete(g) || trace.order.len() != g.n() {
        return Err(BrushError::IncompleteTrace(
            "the trace does not end with every vertex and arc clean".into(),
        ));
    }
    let mut pos = vec![0; g.n()];
    for (i, &v) in trace.order.iter().enumerate() {
        pos[v] = i;
    }
    if let Some(a) = trace.flows.iter().find(|a| pos[a.u] > pos[a.v]) {
        return Err(BrushError::NonMonotoneTrace(format!(
            "brushes on ({}, {}) arrive after {} has fired",
            a.u, a.v, a.v
        )));
    }
    let initial = trace.final_configuration().to_vec();
    let order = trace.order.iter().rev().copied().collect();
    let flows = trace
        .flows
        .iter()
        .map(|a| ArcFlow {
            u: a.v,
            v: a.u,
            f: a.f,
        })
        .collect();
    let plan = BrushPlan::new(initial, order).with_flows(flows);
    run(&g.transpose(), &plan)?;
    Ok(plan)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::pn_lower_bound;
    use crate::graph::{random_dag, FamilySpec};
    use crate::strategies::strategy_transitive;
    use proptest::prelude::*;

    fn tt(n: usize) -> Digraph {
        FamilySpec::TransitiveTournament { n }.build().unwrap()
    }

    #[test]
    fn tt3_decomposition() {
        let m = perfect_decomposition(&tt(3)).unwrap();
        assert_eq!(m.paths, vec![vec![0, 1, 2], vec![0, 2]]);
        assert_eq!(m.perfect_size(), 2);
        let plan = plan_from_paths(&tt(3), &m).unwrap();
        assert_eq!(plan.initial, vec![2, 0, 0]);
        assert!(run(&tt(3), &plan).unwrap().is_complete(&tt(3)));
    }

    #[test]
    fn trivial_decompositions() {
        let path = Digraph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let m = perfect_decomposition(&path).unwrap();
        assert_eq!(m.paths, vec![vec![0, 1, 2, 3]]);
        assert_eq!(
            plan_from_paths(&path, &m).unwrap().initial,
            vec![1, 0, 0, 0]
        );
        let star = Digraph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let m = perfect_decomposition(&star).unwrap();
        assert_eq!(
            plan_from_paths(&star, &m).unwrap().initial,
            vec![3, 0, 0, 0]
        );
        assert!(perfect_decomposition(&Digraph::edgeless(3))
            .unwrap()
            .is_empty());
        let cycle = Digraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(perfect_decomposition(&cycle), Err(BrushError::NotAcyclic));
    }

    #[test]
    fn rejects_broken_decompositions() {
        let g = tt(3);
        let excess = vec![2, 0, -2];
        let missing = PathDecomposition {
            paths: vec![vec![0, 1, 2]],
            excess: excess.clone(),
        };
        assert!(matches!(
            plan_from_paths(&g, &missing),
            Err(BrushError::NotADecomposition(_))
        ));
        let reused = PathDecomposition {
            paths: vec![vec![0, 1, 2], vec![0, 2], vec![1, 2]],
            excess,
        };
        assert!(matches!(
            plan_from_paths(&g, &reused),
            Err(BrushError::NotADecomposition(_))
        ));
    }

    #[test]
    fn transpose_examples() {
        let path = Digraph::new(3, [(0, 1), (1, 2)]).unwrap();
        let trace = run(&path, &BrushPlan::new(vec![1, 0, 0], vec![0, 1, 2])).unwrap();
        assert_eq!(
            transpose_plan(&path, &trace).unwrap().initial,
            vec![0, 0, 1]
        );

        let g = tt(4);
        let trace = run(&g, &strategy_transitive(4).unwrap()).unwrap();
        let plan = transpose_plan(&g, &trace).unwrap();
        assert_eq!(plan.total(), 4);
        assert!(run(&g.transpose(), &plan)
            .unwrap()
            .is_complete(&g.transpose()));

        let e = Digraph::edgeless(2);
        let trace = run(&e, &BrushPlan::new(vec![1, 1], vec![0, 1])).unwrap();
        let plan = transpose_plan(&e, &trace).unwrap();
        assert_eq!(plan.initial, vec![1, 1]);
    }

    #[test]
    fn transpose_needs_forward_trace() {
        let g = Digraph::new(2, [(0, 1)]).unwrap();
        let trace = run(&g, &BrushPlan::new(vec![1, 0], vec![1, 0])).unwrap();
        assert!(matches!(
            transpose_plan(&g, &trace),
            Err(BrushError::NonMonotoneTrace(_))
        ));
        let mut partial = run(&g, &BrushPlan::new(vec![1, 0], vec![0, 1])).unwrap();
        partial.steps.pop();
        assert!(matches!(
            transpose_plan(&g, &partial),
            Err(BrushError::IncompleteTrace(_))
        ));
    }

    proptest! {
        #[test]
        fn perfect_on_random_dags(n in 1usize..12, p in 0.0f64..1.0, seed in any::<u64>()) {
            let g = random_dag(n, p, seed);
            let m = perfect_decomposition(&g).unwrap();
            check_decomposition(&g, &m.paths).unwrap();
            prop_assert_eq!(m.len() as u64, pn_lower_bound(&g));
            let plan = plan_from_paths(&g, &m).unwrap();
            prop_assert_eq!(plan.total(), (m.len() + g.isolated_count()) as u64);
            prop_assert!(run(&g, &plan).unwrap().is_complete(&g));
        }
    }
}
