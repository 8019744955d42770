//! Self-check suites behind `dibrush verify`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::engine::run;
use crate::error::{BrushError, Result};
use crate::graph::{random_dag, random_rooted_tree, Digraph, FamilySpec};
use crate::solver::{
    brushing_number_bruteforce, brushing_number_exact, SolveOptions, BRUTEFORCE_CAP,
};
use crate::strategies::{strategy_transitive, strategy_tt_minus_arc, tt_minus_arc_case};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Theorems,
    Oracle,
    Transpose,
}

impl std::str::FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "theorems" => Ok(Suite::Theorems),
            "oracle" => Ok(Suite::Oracle),
            "transpose" => Ok(Suite::Transpose),
            _ => Err(format!("unknown suite {s:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

impl Row {
    fn new(name: impl Into<String>, expected: impl ToString, computed: impl ToString) -> Self {
        let (expected, computed) = (expected.to_string(), computed.to_string());
        Row {
            name: name.into(),
            pass: expected == computed,
            expected,
            computed,
        }
    }
}

/// Seed shared by the sampled rows.
pub const SUITE_SEED: u64 = 0x5eed;

pub fn run_suite(suite: Suite, max_n: usize, opts: &SolveOptions) -> Result<Vec<Row>> {
    let cap = opts.cap.min(crate::solver::HARD_CAP);
    if max_n > cap {
        return Err(BrushError::TooLarge { n: max_n, cap });
    }
    let opts = SolveOptions {
        cap: max_n.max(opts.cap),
        ..*opts
    };
    match suite {
        Suite::Theorems => theorems(max_n, &opts),
        Suite::Oracle => oracle(max_n.min(BRUTEFORCE_CAP), &opts),
        Suite::Transpose => transpose(max_n, &opts),
    }
}

fn exact(g: &Digraph, opts: &SolveOptions) -> Result<u64> {
    Ok(brushing_number_exact(g, opts)?.value)
}

fn theorems(max_n: usize, opts: &SolveOptions) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for n in 3..=max_n {
        let g = FamilySpec::TransitiveTournament { n }.build()?;
        rows.push(Row::new(
            format!("TT_{n} exact"),
            n * n / 4,
            exact(&g, opts)?,
        ));
        let trace = run(&g, &strategy_transitive(n)?)?;
        rows.push(Row::new(format!("TT_{n} strategy"), n * n / 4, trace.total));
        rows.push(Row::new(
            format!("TT_{n} hamiltonian brush"),
            n,
            trace.max_vertices_visited(),
        ));
    }
    for n in 2..=max_n.min(5) {
        let g = FamilySpec::Complete { n }.build()?;
        rows.push(Row::new(
            format!("K_{n} exact"),
            n * (n - 1) / 2,
            exact(&g, opts)?,
        ));
    }
    for n in (3..=max_n.min(7)).step_by(2) {
        let symbols: Vec<usize> = (1..=(n - 1) / 2).collect();
        let g = FamilySpec::Rotational { n, symbols }.build()?;
        rows.push(Row::new(
            format!("R_{n} consecutive exact"),
            (n * n - 1) / 8,
            exact(&g, opts)?,
        ));
    }
    for seed in 0..10 {
        let n = 2 + (seed as usize % (max_n.max(2) - 1));
        let t = random_rooted_tree(n, SUITE_SEED + seed).build()?;
        let leaves = (0..n).filter(|&v| t.out_degree(v) == 0).count();
        rows.push(Row::new(
            format!("rooted tree n={n} seed={seed}"),
            leaves,
            exact(&t, opts)?,
        ));
    }
    if max_n >= 8 {
        let hourglass = Digraph::new(8, [(0, 3), (1, 3), (2, 3), (3, 4), (4, 5), (4, 6), (4, 7)])?;
        rows.push(Row::new("hourglass", 3, exact(&hourglass, opts)?));
    }
    let wedge = Digraph::new(4, [(0, 1), (0, 2), (1, 2), (3, 2)])?;
    rows.push(Row::new("wedge", 3, exact(&wedge, opts)?));
    if max_n >= 6 {
        let bridged = Digraph::new(
            6,
            [
                (0, 1),
                (0, 2),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 5),
                (3, 5),
                (0, 5),
            ],
        )?;
        rows.push(Row::new("bridged", 3, exact(&bridged, opts)?));
        rows.push(Row::new(
            "bridged minus bridge",
            5,
            exact(&bridged.without_arc(2, 3)?, opts)?,
        ));
    }
    for n in 4..=max_n.min(6) {
        let tt = FamilySpec::TransitiveTournament { n }.build()?;
        let full = (n * n / 4) as u64;
        for &(a, b) in tt.arcs() {
            let case = tt_minus_arc_case(n, (a, b))?;
            let g = tt.without_arc(a, b)?;
            let expected = if case.saves_a_brush() { full - 1 } else { full };
            let plan = strategy_tt_minus_arc(n, (a, b))?;
            run(&g, &plan)?;
            rows.push(Row::new(
                format!("TT_{n} - ({a},{b}) case {case:?} exact"),
                expected,
                exact(&g, opts)?,
            ));
            rows.push(Row::new(
                format!("TT_{n} - ({a},{b}) case {case:?} strategy"),
                expected,
                plan.total(),
            ));
        }
    }
    Ok(rows)
}

/// Random digraph with each ordered pair an arc with probability `p`.
pub fn random_digraph(n: usize, p: f64, seed: u64) -> Digraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let arcs: Vec<_> = (0..n)
        .flat_map(|u| (0..n).map(move |v| (u, v)))
        .filter(|&(u, v)| u != v)
        .filter(|_| rng.gen_bool(p))
        .collect();
    Digraph::new(n, arcs).expect("arcs are in range")
}

fn oracle(max_n: usize, opts: &SolveOptions) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for seed in 0..40u64 {
        let n = 1 + (seed as usize % max_n.max(1));
        let g = random_digraph(n, 0.4, SUITE_SEED + seed);
        let name = format!("random n={n} seed={seed}");
        rows.push(Row::new(
            name,
            brushing_number_bruteforce(&g)?,
            exact(&g, opts)?,
        ));
    }
    Ok(rows)
}

fn transpose(max_n: usize, opts: &SolveOptions) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for seed in 0..30u64 {
        let n = 1 + (seed as usize % max_n.max(1));
        let g = random_dag(n, 0.4, SUITE_SEED + seed);
        let name = format!("dag n={n} seed={seed}");
        rows.push(Row::new(
            name,
            exact(&g, opts)?,
            exact(&g.transpose(), opts)?,
        ));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_at_small_n() {
        let opts = SolveOptions::default();
        for suite in [Suite::Theorems, Suite::Oracle, Suite::Transpose] {
            let rows = run_suite(suite, 5, &opts).unwrap();
            assert!(!rows.is_empty());
            for r in &rows {
                assert!(r.pass, "{suite:?}: {r:?}");
            }
        }
    }

    #[test]
    fn rejects_max_n_above_cap() {
        let opts = SolveOptions::default();
        assert!(matches!(
            run_suite(Suite::Theorems, 10, &opts),
            Err(BrushError::TooLarge { .. })
        ));
    }
}
