use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::Digraph;
use crate::error::{BrushError, Result};

/// A named graph family together with its parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum FamilySpec {
    /// `TT_n`; vertex `i` beats every `j > i`, so `deg⁺(i) = n − 1 − i`.
    TransitiveTournament { n: usize },
    /// Both arcs between every pair.
    Complete { n: usize },
    /// Arc `(x, y)` iff `(y − x) mod n ∈ symbols`.
    Rotational { n: usize, symbols: Vec<usize> },
    /// `children[v]` lists the children of `v`; the root is vertex 0.
    RootedTree { children: Vec<Vec<usize>> },
    /// Forward arcs `i → j` (`i < j`), each kept with probability `p`.
    RandomDag { n: usize, p: f64, seed: u64 },
}

impl FamilySpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            FamilySpec::TransitiveTournament { .. } | FamilySpec::Complete { .. } => Ok(()),
            FamilySpec::Rotational { n, symbols } => validate_symbols(*n, symbols),
            FamilySpec::RootedTree { children } => validate_children(children),
            FamilySpec::RandomDag { p, .. } => {
                if (0.0..=1.0).contains(p) {
                    Ok(())
                } else {
                    Err(BrushError::InvalidFamilySpec(format!(
                        "arc probability {p} outside [0, 1]"
                    )))
                }
            }
        }
    }

    pub fn build(&self) -> Result<Digraph> {
        self.validate()?;
        match self {
            &FamilySpec::TransitiveTournament { n } => {
                Digraph::new(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
            }
            &FamilySpec::Complete { n } => Digraph::new(
                n,
                (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))),
            ),
            FamilySpec::Rotational { n, symbols } => {
                let n = *n;
                Digraph::new(
                    n,
                    (0..n).flat_map(|x| symbols.iter().map(move |&s| (x, (x + s) % n))),
                )
            }
            FamilySpec::RootedTree { children } => Digraph::new(
                children.len(),
                children
                    .iter()
                    .enumerate()
                    .flat_map(|(p, cs)| cs.iter().map(move |&c| (p, c))),
            ),
            &FamilySpec::RandomDag { n, p, seed } => Ok(random_dag(n, p, seed)),
        }
    }
}

fn validate_symbols(n: usize, symbols: &[usize]) -> Result<()> {
    let bad = |msg: String| Err(BrushError::InvalidFamilySpec(msg));
    if n.is_multiple_of(2) {
        return bad(format!("rotational tournaments need odd n, got {n}"));
    }
    if symbols.len() != (n - 1) / 2 {
        return bad(format!(
            "symbol set must have {} elements, got {}",
            (n - 1) / 2,
            symbols.len()
        ));
    }
    let mut seen = vec![false; n];
    for &s in symbols {
        if s == 0 || s >= n {
            return bad(format!("symbol {s} outside 1..{}", n - 1));
        }
        if seen[s] {
            return bad(format!("symbol {s} repeated"));
        }
        if seen[n - s] {
            return bad(format!("symbols {} and {s} sum to {n}", n - s));
        }
        seen[s] = true;
    }
    Ok(())
}

fn validate_children(children: &[Vec<usize>]) -> Result<()> {
    let n = children.len();
    let bad = |msg: String| Err(BrushError::InvalidFamilySpec(msg));
    if n == 0 {
        return bad("rooted tree needs at least the root".into());
    }
    let mut parent = vec![None; n];
    for (p, cs) in children.iter().enumerate() {
        for &c in cs {
            if c >= n {
                return bad(format!("child {c} of {p} outside 0..{n}"));
            }
            if c == 0 {
                return bad(format!("root 0 listed as a child of {p}"));
            }
            if parent[c].replace(p).is_some() {
                return bad(format!("vertex {c} has two parents"));
            }
        }
    }
    // every vertex must be reached from the root; otherwise the child lists
    // contain a cycle detached from it
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &c in &children[v] {
            if !seen[c] {
                seen[c] = true;
                stack.push(c);
            }
        }
    }
    match seen.iter().position(|s| !s) {
        Some(v) => bad(format!(
            "vertex {v} is not reachable from the root (cyclic child list)"
        )),
        None => Ok(()),
    }
}

/// Random acyclic digraph: each forward pair `i < j` becomes an arc with
/// probability `p`. Deterministic per `(n, p, seed)`.
pub fn random_dag(n: usize, p: f64, seed: u64) -> Digraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut arcs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p.clamp(0.0, 1.0)) {
                arcs.push((i, j));
            }
        }
    }
    Digraph::new(n, arcs).expect("forward arcs form a simple digraph")
}

/// Random rooted tree on `n ≥ 1` vertices: vertex `i > 0` picks its parent
/// uniformly among `0..i`.
pub fn random_rooted_tree(n: usize, seed: u64) -> FamilySpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut children = vec![Vec::new(); n.max(1)];
    for i in 1..n {
        let p = rng.gen_range(0..i);
        children[p].push(i);
    }
    FamilySpec::RootedTree { children }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tt3_arcs() {
        let g = FamilySpec::TransitiveTournament { n: 3 }.build().unwrap();
        assert_eq!(g.arcs(), &[(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn tt_degree_sequence() {
        for n in 1..10 {
            let g = FamilySpec::TransitiveTournament { n }.build().unwrap();
            assert_eq!(g.arc_count(), n * (n - 1) / 2);
            let degs: Vec<usize> = (0..n).map(|v| g.out_degree(v)).collect();
            assert_eq!(degs, (0..n).rev().collect::<Vec<_>>());
        }
    }

    #[test]
    fn rotational_three_cycle() {
        let g = FamilySpec::Rotational {
            n: 3,
            symbols: vec![1],
        }
        .build()
        .unwrap();
        assert_eq!(g.arcs(), &[(0, 1), (1, 2), (2, 0)]);
    }

    #[test]
    fn rotational_rejects_complementary_pair() {
        let err = FamilySpec::Rotational {
            n: 5,
            symbols: vec![1, 4],
        }
        .build();
        assert!(matches!(err, Err(BrushError::InvalidFamilySpec(_))));
    }

    #[test]
    fn rotational_rejects_even_n() {
        let err = FamilySpec::Rotational {
            n: 6,
            symbols: vec![1, 2],
        }
        .build();
        assert!(matches!(err, Err(BrushError::InvalidFamilySpec(_))));
    }

    #[test]
    fn rotational_is_regular_tournament() {
        for (n, s) in [
            (5, vec![1, 2]),
            (7, vec![1, 2, 4]),
            (7, vec![3, 5, 6]),
            (9, vec![1, 3, 5, 7]),
        ] {
            let g = FamilySpec::Rotational { n, symbols: s }.build().unwrap();
            assert!(g.is_tournament());
            assert!((0..n).all(|v| g.out_degree(v) == (n - 1) / 2));
        }
    }

    #[test]
    fn complete_digraph() {
        let g = FamilySpec::Complete { n: 4 }.build().unwrap();
        assert_eq!(g.arc_count(), 12);
        assert!(g.is_complete());
    }

    #[test]
    fn cyclic_child_list_rejected() {
        let spec = FamilySpec::RootedTree {
            children: vec![vec![1], vec![], vec![3], vec![2]],
        };
        assert!(matches!(
            spec.build(),
            Err(BrushError::InvalidFamilySpec(_))
        ));
    }

    #[test]
    fn random_dag_extremes() {
        assert_eq!(random_dag(4, 0.0, 7).arc_count(), 0);
        assert_eq!(
            random_dag(4, 1.0, 7),
            FamilySpec::TransitiveTournament { n: 4 }.build().unwrap()
        );
        assert_eq!(random_dag(8, 0.4, 11), random_dag(8, 0.4, 11));
    }

    #[test]
    fn random_trees_are_rooted_at_zero() {
        for seed in 0..20 {
            let g = random_rooted_tree(9, seed).build().unwrap();
            assert_eq!(g.rooted_tree_root(), Some(0));
        }
    }
}
