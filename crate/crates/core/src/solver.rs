//! Exact brushing numbers by search over firing orders.
//!
//! For a fixed order the cheapest configuration is a min-flow problem
//! ([`crate::floworder`]); the solver searches orders depth-first and
//! prunes a prefix when a cut lower bound valid for every completion reaches
//! the incumbent.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::combined_lower_bound;
use crate::engine::{firing_threshold, BrushPlan};
use crate::error::{BrushError, Result};
use crate::floworder::{min_initial_for_order, min_total_for_order};
use crate::graph::Digraph;
use crate::strategies::best_known_plan;

pub const DEFAULT_CAP: usize = 9;
pub const HARD_CAP: usize = 12;
pub const BRUTEFORCE_CAP: usize = 5;
pub const CONJECTURE_CAP: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveOptions {
    /// Only enumerate topological orders (acyclic graphs only).
    pub topo_only: bool,
    /// Worker threads; `0` uses rayon's default.
    pub workers: usize,
    /// Largest `n` accepted, at most [`HARD_CAP`].
    pub cap: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            topo_only: false,
            workers: 0,
            cap: DEFAULT_CAP,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveStats {
    /// Complete orders whose min-flow was computed.
    pub orders_explored: u64,
    /// Prefixes cut off by the bound.
    pub pruned: u64,
    /// Global lower bound the search started from.
    pub lower_bound_used: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveResult {
    pub value: u64,
    pub witness: BrushPlan,
    pub stats: SolveStats,
}

fn check_size(n: usize, cap: usize) -> Result<()> {
    let cap = cap.min(HARD_CAP);
    if n > cap {
        return Err(BrushError::TooLarge { n, cap });
    }
    Ok(())
}

/// Lower bounds on the min-flow value of any order that starts with a
/// given prefix.
struct PrefixBounds<'a> {
    g: &'a Digraph,
    global: u64,
}

impl PrefixBounds<'_> {
    /// `placed[v]` marks prefix vertices, `pos[v]` their positions.
    ///
    /// Two cuts are used. With `X = V`, every backward arc costs a brush;
    /// arcs inside the prefix and arcs from the suffix into it are already
    /// known to be backward. With `X = P ∪ W`, where `W` holds the
    /// unplaced vertices whose in-neighbours are all placed, no forward arc
    /// enters `X`, so each arc leaving `X`, each backward arc inside it and
    /// each isolated vertex in it costs a brush.
    fn bound(&self, placed: &[bool], pos: &[usize]) -> u64 {
        let g = self.g;
        let in_w: Vec<bool> = (0..g.n())
            .map(|v| !placed[v] && g.in_neighbors(v).iter().all(|&u| placed[u]))
            .collect();
        let mut backward = 0u64;
        let mut closed = 0u64;
        for &(u, v) in g.arcs() {
            let back = match (placed[u], placed[v]) {
                (true, true) => pos[u] > pos[v],
                (false, true) => true,
                _ => false,
            };
            backward += u64::from(back);
            let in_x = |x: usize| placed[x] || in_w[x];
            if in_x(u) && (!in_x(v) || back) {
                closed += 1;
            }
        }
        let iso_all = g.isolated_count() as u64;
        let iso_x = (0..g.n())
            .filter(|&v| (placed[v] || in_w[v]) && g.is_isolated(v))
            .count() as u64;
        self.global.max(backward + iso_all).max(closed + iso_x)
    }
}

struct Search<'a> {
    g: &'a Digraph,
    bounds: PrefixBounds<'a>,
    children: Vec<usize>,
    topo_only: bool,
    incumbent: &'a AtomicU64,
    explored: AtomicU64,
    pruned: AtomicU64,
}

struct Prefix {
    order: Vec<usize>,
    placed: Vec<bool>,
    pos: Vec<usize>,
    indeg_left: Vec<usize>,
}

impl Prefix {
    fn new(g: &Digraph) -> Self {
        let n = g.n();
        Prefix {
            order: Vec::with_capacity(n),
            placed: vec![false; n],
            pos: vec![0; n],
            indeg_left: (0..n).map(|v| g.in_degree(v)).collect(),
        }
    }

    fn push(&mut self, g: &Digraph, v: usize) {
        self.pos[v] = self.order.len();
        self.placed[v] = true;
        self.order.push(v);
        for &w in g.out_neighbors(v) {
            self.indeg_left[w] -= 1;
        }
    }

    fn pop(&mut self, g: &Digraph) {
        let v = self.order.pop().expect("non-empty prefix");
        self.placed[v] = false;
        for &w in g.out_neighbors(v) {
            self.indeg_left[w] += 1;
        }
    }

    fn allows(&self, v: usize, topo_only: bool) -> bool {
        !self.placed[v] && (!topo_only || self.indeg_left[v] == 0)
    }
}

impl Search<'_> {
    fn dfs(&self, prefix: &mut Prefix) {
        let best = self.incumbent.load(Ordering::Relaxed);
        if best <= self.bounds.global {
            return;
        }
        if prefix.order.len() == self.g.n() {
            self.explored.fetch_add(1, Ordering::Relaxed);
            let value =
                min_total_for_order(self.g, &prefix.order).expect("orders are permutations");
            self.incumbent.fetch_min(value, Ordering::Relaxed);
            return;
        }
        if self.bounds.bound(&prefix.placed, &prefix.pos) >= best {
            self.pruned.fetch_add(1, Ordering::Relaxed);
            return;
        }
        for &v in &self.children {
            if prefix.allows(v, self.topo_only) {
                prefix.push(self.g, v);
                self.dfs(prefix);
                prefix.pop(self.g);
            }
        }
    }
}

fn is_topological(g: &Digraph, order: &[usize]) -> bool {
    let mut pos = vec![0; g.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    g.arcs().iter().all(|&(u, v)| pos[u] < pos[v])
}

/// Lexicographically least order whose min-flow value is `value`.
fn least_optimal_order(
    g: &Digraph,
    bounds: &PrefixBounds<'_>,
    value: u64,
    topo_only: bool,
) -> Option<Vec<usize>> {
    fn go(
        g: &Digraph,
        bounds: &PrefixBounds<'_>,
        value: u64,
        topo_only: bool,
        prefix: &mut Prefix,
    ) -> bool {
        if prefix.order.len() == g.n() {
            return min_total_for_order(g, &prefix.order).expect("orders are permutations")
                == value;
        }
        if bounds.bound(&prefix.placed, &prefix.pos) > value {
            return false;
        }
        for v in 0..g.n() {
            if prefix.allows(v, topo_only) {
                prefix.push(g, v);
                if go(g, bounds, value, topo_only, prefix) {
                    return true;
                }
                prefix.pop(g);
            }
        }
        false
    }
    let mut prefix = Prefix::new(g);
    go(g, bounds, value, topo_only, &mut prefix).then_some(prefix.order)
}

/// Brushing number of `g` with a witness plan. The witness fires the
/// lexicographically least optimal order, with the configuration
/// [`min_initial_for_order`] picks for it, so it does not depend on thread
/// timing.
pub fn brushing_number_exact(g: &Digraph, opts: &SolveOptions) -> Result<SolveResult> {
    let n = g.n();
    check_size(n, opts.cap)?;
    if opts.topo_only && !g.is_dag() {
        return Err(BrushError::TopoOnlyOnCyclic);
    }
    if n == 0 {
        return Ok(SolveResult {
            value: 0,
            witness: BrushPlan::new(vec![], vec![]),
            stats: SolveStats::default(),
        });
    }

    let global = combined_lower_bound(g);
    let seed = {
        let plan = best_known_plan(g);
        if !opts.topo_only || is_topological(g, &plan.order) {
            plan.total()
        } else {
            (g.arc_count() + g.isolated_count()) as u64
        }
    };
    let incumbent = AtomicU64::new(seed);
    let mut children: Vec<usize> = (0..n).collect();
    children.sort_by_key(|&v| (std::cmp::Reverse(g.out_degree(v)), v));
    let search = Search {
        g,
        bounds: PrefixBounds { g, global },
        children: children.clone(),
        topo_only: opts.topo_only,
        incumbent: &incumbent,
        explored: AtomicU64::new(0),
        pruned: AtomicU64::new(0),
    };

    let explore = || {
        children.par_iter().for_each(|&first| {
            let mut prefix = Prefix::new(g);
            if prefix.allows(first, opts.topo_only) {
                prefix.push(g, first);
                search.dfs(&mut prefix);
            }
        })
    };
    if opts.workers == 0 {
        explore();
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(opts.workers)
            .build()
            .map_err(|e| BrushError::InvalidPlan(format!("cannot start workers: {e}")))?
            .install(explore);
    }

    let value = incumbent.load(Ordering::Relaxed);
    let order = least_optimal_order(g, &search.bounds, value, opts.topo_only)
        .expect("the incumbent value is attained by some order");
    let witness = min_initial_for_order(g, &order)?.into_plan(order);
    debug_assert_eq!(witness.total(), value);
    Ok(SolveResult {
        value,
        witness,
        stats: SolveStats {
            orders_explored: search.explored.load(Ordering::Relaxed),
            pruned: search.pruned.load(Ordering::Relaxed),
            lower_bound_used: global,
        },
    })
}

/// Brushing number by exhaustive search, sharing no code with the flow
/// solver. Tries totals `T = 0, 1, …`; for each it walks every firing order,
/// topping each vertex up from the remaining budget just before it fires
/// and trying every split of its surplus between its unfired out-neighbours
/// and itself. Surplus sent to a fired neighbour is stranded, which is the
/// same as keeping it.
pub fn brushing_number_bruteforce(g: &Digraph) -> Result<u64> {
    check_size(g.n(), BRUTEFORCE_CAP)?;
    let upper = (g.arc_count() + g.isolated_count()) as u64;
    for total in 0..=upper {
        let mut held = vec![0; g.n()];
        let mut fired = vec![false; g.n()];
        if brute(g, &mut held, &mut fired, total) {
            return Ok(total);
        }
    }
    unreachable!("deg⁺ on every vertex always cleans the graph")
}

fn brute(g: &Digraph, held: &mut Vec<u64>, fired: &mut Vec<bool>, budget: u64) -> bool {
    if fired.iter().all(|&f| f) {
        return true;
    }
    for v in 0..g.n() {
        if fired[v] {
            continue;
        }
        let need = firing_threshold(g, v);
        let lacking = need.saturating_sub(held[v]);
        if lacking > budget {
            continue;
        }
        for extra in lacking..=budget {
            let have = held[v] + extra;
            let targets: Vec<usize> = g
                .out_neighbors(v)
                .iter()
                .copied()
                .filter(|&w| !fired[w])
                .collect();
            let surplus = have - g.out_degree(v) as u64;
            let saved = held[v];
            held[v] = 0;
            fired[v] = true;
            for &w in g.out_neighbors(v) {
                held[w] += 1;
            }
            let ok = spread(g, held, fired, &targets, surplus, budget - extra);
            for &w in g.out_neighbors(v) {
                held[w] -= 1;
            }
            fired[v] = false;
            held[v] = saved;
            if ok {
                return true;
            }
        }
    }
    false
}

/// Gives `targets[0]` every possible share of `surplus` (the rest of the
/// list takes what remains; leftovers stay put) and recurses.
fn spread(
    g: &Digraph,
    held: &mut Vec<u64>,
    fired: &mut Vec<bool>,
    targets: &[usize],
    surplus: u64,
    budget: u64,
) -> bool {
    let Some((&w, rest)) = targets.split_first() else {
        return brute(g, held, fired, budget);
    };
    for share in 0..=surplus {
        held[w] += share;
        let ok = spread(g, held, fired, rest, surplus - share, budget);
        held[w] -= share;
        if ok {
            return true;
        }
    }
    false
}

/// Regular tournaments of one size, up to isomorphism, with their exact
/// brushing numbers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub n: usize,
    pub labeled_count: u64,
    /// One representative per isomorphism class with its brushing number.
    pub classes: Vec<ConjectureClass>,
    pub max_value: u64,
    /// `(n² − 4n + 7)/4`.
    pub bound: u64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureClass {
    pub arcs: Vec<(usize, usize)>,
    pub value: u64,
}

pub const CONJECTURE_DEFAULT_NS: [usize; 2] = [3, 5];

/// Solves every regular tournament on `n` labeled vertices (one per
/// isomorphism class) for each `n` and compares the largest brushing
/// number with `(n² − 4n + 7)/4`. Reports; never asserts.
pub fn conjecture_explorer(ns: &[usize], opts: &SolveOptions) -> Result<Vec<ConjectureReport>> {
    for &n in ns {
        if n.is_multiple_of(2) {
            return Err(BrushError::BadSize(n));
        }
        check_size(n, CONJECTURE_CAP)?;
    }
    ns.iter()
        .map(|&n| {
            let tournaments = regular_tournaments(n);
            let labeled_count = tournaments.len() as u64;
            let mut seen = std::collections::BTreeSet::new();
            let mut classes = Vec::new();
            for g in tournaments {
                if seen.insert(canonical_form(&g)) {
                    let value = brushing_number_exact(
                        &g,
                        &SolveOptions {
                            cap: HARD_CAP,
                            ..*opts
                        },
                    )?
                    .value;
                    classes.push(ConjectureClass {
                        arcs: g.arcs().to_vec(),
                        value,
                    });
                }
            }
            let max_value = classes.iter().map(|c| c.value).max().unwrap_or(0);
            let bound = ((n * n + 7 - 4 * n) / 4) as u64;
            Ok(ConjectureReport {
                n,
                labeled_count,
                classes,
                max_value,
                bound,
                holds: max_value <= bound,
            })
        })
        .collect()
}

/// All tournaments on `0..n` in which every vertex beats `(n − 1)/2`
/// others.
pub fn regular_tournaments(n: usize) -> Vec<Digraph> {
    struct Builder {
        n: usize,
        half: usize,
        pairs: Vec<(usize, usize)>,
        out_deg: Vec<usize>,
        in_deg: Vec<usize>,
        arcs: Vec<(usize, usize)>,
        found: Vec<Digraph>,
    }

    impl Builder {
        fn orient(&mut self, i: usize) {
            let Some(&(x, y)) = self.pairs.get(i) else {
                let g = Digraph::new(self.n, self.arcs.iter().copied()).expect("valid tournament");
                self.found.push(g);
                return;
            };
            for (a, b) in [(x, y), (y, x)] {
                if self.out_deg[a] < self.half && self.in_deg[b] < self.half {
                    self.out_deg[a] += 1;
                    self.in_deg[b] += 1;
                    self.arcs.push((a, b));
                    self.orient(i + 1);
                    self.arcs.pop();
                    self.out_deg[a] -= 1;
                    self.in_deg[b] -= 1;
                }
            }
        }
    }

    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
        .collect();
    let mut b = Builder {
        n,
        half: n.saturating_sub(1) / 2,
        arcs: Vec::with_capacity(pairs.len()),
        pairs,
        out_deg: vec![0; n],
        in_deg: vec![0; n],
        found: Vec::new(),
    };
    b.orient(0);
    b.found
}

/// Least sorted arc list over all relabelings.
fn canonical_form(g: &Digraph) -> Vec<(usize, usize)> {
    let n = g.n();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<(usize, usize)>> = None;
    loop {
        let mut arcs: Vec<(usize, usize)> =
            g.arcs().iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        arcs.sort_unstable();
        if best.as_ref().is_none_or(|b| arcs < *b) {
            best = Some(arcs);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.unwrap_or_default()
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = p.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = p.iter().rposition(|&x| x > p[i]).expect("p[i + 1] > p[i]");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}
