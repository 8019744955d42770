use crate::engine::{ArcFlow, BrushPlan};
use crate::error::{BrushError, Result};
use crate::graph::{Digraph, FamilySpec};

/// Complete digraph on `n` vertices: `n − 1 − i` brushes on vertex `i`,
/// fired in index order. A lone vertex is isolated and gets one brush.
pub fn strategy_complete(n: usize) -> Result<BrushPlan> {
    if n == 0 {
        return Err(BrushError::BadSize(0));
    }
    let mut initial: Vec<u64> = (0..n).map(|i| (n - 1 - i) as u64).collect();
    if n == 1 {
        initial[0] = 1;
    }
    Ok(BrushPlan::new(initial, (0..n).collect()))
}

/// Rotational tournament `R(S)` fired in label order. Vertex `k` already
/// receives a brush from each symbol `s ≤ k`, so it is topped up to
/// `(n − 1)/2`. For `S = {1, …, (n−1)/2}` this is `(n−1)/2 − k` brushes on
/// the first `(n−1)/2` vertices, `(n² − 1)/8` in total.
pub fn strategy_rotational(n: usize, symbols: &[usize]) -> Result<BrushPlan> {
    FamilySpec::Rotational {
        n,
        symbols: symbols.to_vec(),
    }
    .validate()?;
    let half = (n - 1) / 2;
    let mut initial: Vec<u64> = (0..n)
        .map(|k| half.saturating_sub(symbols.iter().filter(|&&s| s <= k).count()) as u64)
        .collect();
    if n == 1 {
        initial[0] = 1;
    }
    Ok(BrushPlan::new(initial, (0..n).collect()))
}

/// One brush per leaf, all starting at the root; each walks the unique
/// root-to-leaf path.
pub fn strategy_rooted_tree(t: &Digraph) -> Result<BrushPlan> {
    let root = t.rooted_tree_root().ok_or(BrushError::NotRootedTree)?;
    let order = t.topological_order().expect("rooted trees are acyclic");
    let mut leaves = vec![0u64; t.n()];
    for &v in order.iter().rev() {
        leaves[v] = if t.out_degree(v) == 0 {
            1
        } else {
            t.out_neighbors(v).iter().map(|&w| leaves[w]).sum()
        };
    }
    let mut initial = vec![0; t.n()];
    initial[root] = leaves[root];
    let flows = t
        .arcs()
        .iter()
        .map(|&(u, v)| ArcFlow { u, v, f: leaves[v] })
        .collect();
    Ok(BrushPlan::new(initial, order).with_flows(flows))
}
