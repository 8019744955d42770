//! Lower and upper bounds on the brushing number.

use serde::{Deserialize, Serialize};

use crate::engine::firing_threshold;
use crate::error::{BrushError, Result};
use crate::graph::Digraph;

pub const DEFAULT_SUBSET_CAP: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeBounds {
    pub lower: u64,
    pub upper: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutBound {
    pub value: u64,
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub max_outdeg: u64,
    pub arc_count: u64,
    pub lower: u64,
    pub upper: u64,
    pub cut_bound: Option<CutBound>,
    pub tree_duality: Option<u64>,
    pub pn_lower: Option<u64>,
}

/// Largest firing threshold (and the isolated-vertex count) below, `|A|`
/// plus one brush per isolated vertex above.
pub fn degree_bounds(g: &Digraph) -> DegreeBounds {
    let isolated = g.isolated_count() as u64;
    let max_threshold = (0..g.n())
        .map(|v| firing_threshold(g, v))
        .max()
        .unwrap_or(0);
    DegreeBounds {
        lower: max_threshold.max(isolated),
        upper: g.arc_count() as u64 + isolated,
    }
}

/// Best `|[S, S̄]|` over proper non-empty `S` that no arc enters from
/// outside. Each such cut arc needs a brush of its own.
pub fn best_cut_lower_bound(g: &Digraph, subset_cap: usize) -> Result<CutBound> {
    let n = g.n();
    if n > subset_cap || n >= 64 {
        return Err(BrushError::TooLarge {
            n,
            cap: subset_cap.min(63),
        });
    }
    let out_mask: Vec<u64> = (0..n)
        .map(|v| g.out_neighbors(v).iter().fold(0, |m, &w| m | 1 << w))
        .collect();
    let full = (1u64 << n) - 1;
    let mut best = CutBound {
        value: 0,
        witness: Vec::new(),
    };
    for s in 1..full {
        let outside = full & !s;
        let mut closed = true;
        let mut rest = outside;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if out_mask[v] & s != 0 {
                closed = false;
                break;
            }
        }
        if !closed {
            continue;
        }
        let mut cut = 0u64;
        let mut inside = s;
        while inside != 0 {
            let v = inside.trailing_zeros() as usize;
            inside &= inside - 1;
            cut += (out_mask[v] & outside).count_ones() as u64;
        }
        if cut > best.value {
            best = CutBound {
                value: cut,
                witness: (0..n).filter(|v| s >> v & 1 == 1).collect(),
            };
        }
    }
    Ok(best)
}

/// For an oriented tree: the larger of the summed out-degrees of its sources
/// and the summed in-degrees of its sinks.
pub fn tree_duality_bound(t: &Digraph) -> Result<u64> {
    if !t.is_oriented_tree() {
        return Err(BrushError::NotATree);
    }
    let sources: usize = (0..t.n())
        .filter(|&v| t.in_degree(v) == 0)
        .map(|v| t.out_degree(v))
        .sum();
    let sinks: usize = (0..t.n())
        .filter(|&v| t.out_degree(v) == 0)
        .map(|v| t.in_degree(v))
        .sum();
    Ok(sources.max(sinks) as u64)
}

/// `½ Σ |deg⁺(v) − deg⁻(v)|`, a lower bound on the path number.
pub fn pn_lower_bound(g: &Digraph) -> u64 {
    (0..g.n()).map(|v| g.excess(v).unsigned_abs()).sum::<u64>() / 2
}

/// Every bound that applies to `g`.
pub fn report(g: &Digraph) -> BoundReport {
    let deg = degree_bounds(g);
    let cut_bound = best_cut_lower_bound(g, DEFAULT_SUBSET_CAP).ok();
    let tree_duality = tree_duality_bound(g).ok();
    let lower = [
        Some(deg.lower),
        cut_bound.as_ref().map(|c| c.value),
        tree_duality,
    ]
    .into_iter()
    .flatten()
    .max()
    .unwrap_or(0);
    BoundReport {
        max_outdeg: g.max_out_degree() as u64,
        arc_count: g.arc_count() as u64,
        lower,
        upper: deg.upper,
        cut_bound,
        tree_duality,
        pn_lower: g.is_dag().then(|| pn_lower_bound(g)),
    }
}

/// Best lower bound available without search.
pub fn combined_lower_bound(g: &Digraph) -> u64 {
    report(g).lower
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::FamilySpec;

    fn tt(n: usize) -> Digraph {
        FamilySpec::TransitiveTournament { n }.build().unwrap()
    }

    #[test]
    fn degree_examples() {
        assert_eq!(degree_bounds(&tt(4)), DegreeBounds { lower: 3, upper: 6 });
        assert_eq!(
            degree_bounds(&Digraph::edgeless(3)),
            DegreeBounds { lower: 3, upper: 3 }
        );
        let hourglass =
            Digraph::new(8, [(0, 3), (1, 3), (2, 3), (3, 4), (4, 5), (4, 6), (4, 7)]).unwrap();
        assert_eq!(
            degree_bounds(&hourglass),
            DegreeBounds { lower: 3, upper: 7 }
        );
    }

    #[test]
    fn cut_of_transitive_tournaments() {
        for n in 2..=10 {
            let cut = best_cut_lower_bound(&tt(n), 20).unwrap();
            assert_eq!(cut.value, (n * n / 4) as u64, "n = {n}");
            // any closed S in TT_n is a prefix
            let k = cut.witness.len();
            assert_eq!(cut.witness, (0..k).collect::<Vec<_>>());
        }
    }

    #[test]
    fn cut_of_wedge() {
        let g = Digraph::new(4, [(0, 1), (0, 2), (1, 2), (3, 2)]).unwrap();
        let cut = best_cut_lower_bound(&g, 20).unwrap();
        assert_eq!(cut.value, 3);
        // S = {v1, v4} attains it
        let s = [0usize, 3];
        let crossing = g
            .arcs()
            .iter()
            .filter(|(u, v)| s.contains(u) && !s.contains(v))
            .count();
        assert!(g
            .arcs()
            .iter()
            .all(|(u, v)| s.contains(u) || !s.contains(v)));
        assert_eq!(crossing, 3);
    }

    #[test]
    fn cut_of_cycle_is_zero() {
        let c = Digraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(
            best_cut_lower_bound(&c, 20).unwrap(),
            CutBound {
                value: 0,
                witness: vec![]
            }
        );
        assert!(best_cut_lower_bound(&tt(21), 20).is_err());
    }

    #[test]
    fn tree_duality_examples() {
        let star = Digraph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(tree_duality_bound(&star).unwrap(), 3);
        let path = Digraph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(tree_duality_bound(&path).unwrap(), 1);
        // sources a=0 (two out-arcs) and b=1 (one); sinks 3 and 4 take 2 in total
        let mixed = Digraph::new(5, [(0, 2), (0, 3), (1, 2), (2, 4)]).unwrap();
        assert_eq!(tree_duality_bound(&mixed).unwrap(), 3);
        assert_eq!(tree_duality_bound(&tt(3)), Err(BrushError::NotATree));
    }

    #[test]
    fn path_number_examples() {
        assert_eq!(pn_lower_bound(&tt(3)), 2);
        let cycle = Digraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(pn_lower_bound(&cycle), 0);
        let star = Digraph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(pn_lower_bound(&star), 3);
    }
}
