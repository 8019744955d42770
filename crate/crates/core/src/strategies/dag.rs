use crate::engine::{ArcFlow, BrushPlan};
use crate::error::{BrushError, Result};
use crate::graph::Digraph;
use crate::solver::{brushing_number_exact, SolveOptions};

/// Graphs this small are handed to the exact solver.
pub const RECURSION_BASE: usize = 5;

/// Plan for a DAG built by peeling off a source `u` and a sink `v`.
///
/// The rest `S = V ∖ {u, v}` is planned recursively. On top of that, `u`
/// gets one brush per arc into `S` (plus one for an arc `u → v`), and each
/// in-neighbour of `v` in `S` that `u` does not feed gets one brush for its
/// arc to `v`. A brush from `u` to a common neighbour `x` continues along
/// `x → v`. The order is `u`, then the recursive order, then `v`. Uses at
/// most `⌊n²/4⌋` brushes for `n ≥ 4`.
pub fn strategy_dag_recursive(g: &Digraph) -> Result<BrushPlan> {
    if !g.is_dag() {
        return Err(BrushError::NotAcyclic);
    }
    let n = g.n();
    if n <= RECURSION_BASE {
        return Ok(brushing_number_exact(g, &SolveOptions::default())?.witness);
    }

    let u = (0..n)
        .find(|&x| g.in_degree(x) == 0)
        .expect("a DAG has a source");
    let v = (0..n)
        .find(|&x| x != u && g.out_degree(x) == 0)
        .expect("a DAG has a sink besides u");
    let (rest, kept) = g.delete_vertices(&[u, v]);
    let sub = strategy_dag_recursive(&rest)?;

    let mut initial = vec![0u64; n];
    for (i, &x) in kept.iter().enumerate() {
        initial[x] = sub.initial[i];
    }
    let mut flows: Vec<ArcFlow> = sub
        .flows
        .as_ref()
        .expect("recursive plans carry explicit flows")
        .iter()
        .map(|a| ArcFlow {
            u: kept[a.u],
            v: kept[a.v],
            f: a.f,
        })
        .collect();

    for &x in g.out_neighbors(u) {
        flows.push(ArcFlow { u, v: x, f: 1 });
        initial[u] += 1;
    }
    for &y in g.in_neighbors(v).iter().filter(|&&y| y != u) {
        flows.push(ArcFlow { u: y, v, f: 1 });
        if !g.has_arc(u, y) {
            initial[y] += 1;
        }
    }
    if g.is_isolated(u) {
        initial[u] = 1;
    }
    if g.is_isolated(v) {
        initial[v] = 1;
    }

    let mut order = Vec::with_capacity(n);
    order.push(u);
    order.extend(sub.order.iter().map(|&i| kept[i]));
    order.push(v);
    Ok(BrushPlan::new(initial, order).with_flows(flows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::run;
    use crate::graph::{random_dag, FamilySpec};
    use proptest::prelude::*;

    #[test]
    fn edgeless_four() {
        let g = Digraph::edgeless(4);
        assert_eq!(strategy_dag_recursive(&g).unwrap().total(), 4);
    }

    #[test]
    fn transitive_six() {
        let g = FamilySpec::TransitiveTournament { n: 6 }.build().unwrap();
        let plan = strategy_dag_recursive(&g).unwrap();
        assert!(plan.total() <= 9);
        assert!(run(&g, &plan).unwrap().is_complete(&g));
    }

    #[test]
    fn hourglass_plan() {
        let g = Digraph::new(8, [(0, 3), (1, 3), (2, 3), (3, 4), (4, 5), (4, 6), (4, 7)]).unwrap();
        let plan = strategy_dag_recursive(&g).unwrap();
        assert!(plan.total() <= 16);
        assert!(run(&g, &plan).unwrap().is_complete(&g));
    }

    #[test]
    fn rejects_cycles() {
        let c = Digraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(strategy_dag_recursive(&c), Err(BrushError::NotAcyclic));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn within_quarter_square(n in 4usize..=11, p in 0.0f64..1.0, seed in any::<u64>()) {
            let g = random_dag(n, p, seed);
            let plan = strategy_dag_recursive(&g).unwrap();
            prop_assert!(plan.total() <= (n * n / 4) as u64);
            prop_assert!(run(&g, &plan).unwrap().is_complete(&g));
        }
    }
}
