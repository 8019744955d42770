use serde::{Deserialize, Serialize};

use crate::engine::BrushPlan;
use crate::error::{BrushError, Result};
use crate::graph::Arc;

/// Cleaning plan for `TT_n` under the generator labeling (vertex `i` beats
/// every `j > i`). The first `⌊n/2⌋` vertices get `n − 1, n − 3, …` brushes
/// and fire in index order; every later vertex then holds at least its
/// out-degree. Uses `⌊n²/4⌋` brushes.
pub fn strategy_transitive(n: usize) -> Result<BrushPlan> {
    if n < 3 {
        return Err(BrushError::BadSize(n));
    }
    Ok(BrushPlan::new(transitive_initial(n), (0..n).collect()))
}

fn transitive_initial(n: usize) -> Vec<u64> {
    let half = n / 2;
    (1..=n)
        .map(|k| if k <= half { (n + 1 - 2 * k) as u64 } else { 0 })
        .collect()
}

/// Where the deleted arc `(v_a, v_b)` sits relative to the split
/// `L = {v_1..v_ℓ}`, `R = {v_ℓ+1..v_n}`, `ℓ = ⌊n/2⌋`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TtCase {
    /// `a ∈ L∖{v_ℓ}`, `b ∈ R∖{v_ℓ+1}`.
    I,
    /// `a ∈ L∖{v_ℓ}`, `b = v_ℓ+1`, `n` even.
    II,
    /// `a ∈ L∖{v_ℓ}`, `b = v_ℓ+1`, `n` odd.
    III,
    /// `a ∈ L∖{v_ℓ}`, `b ∈ L`.
    IV,
    /// `a, b ∈ R`.
    V,
    /// `a = v_ℓ`, `b = v_ℓ+1`, `n` odd.
    VI,
    /// `a = v_ℓ`, `b = v_ℓ+1`, `n` even.
    VII,
    /// `a = v_ℓ`, `b ∈ R∖{v_ℓ+1}`.
    VIII,
}

impl TtCase {
    /// Cases whose plan saves a brush over `TT_n`.
    pub fn saves_a_brush(self) -> bool {
        matches!(self, TtCase::I | TtCase::II | TtCase::VII | TtCase::VIII)
    }
}

/// Case of the 0-indexed arc `(a, b)`, `a < b < n`.
pub fn tt_minus_arc_case(n: usize, (a, b): Arc) -> Result<TtCase> {
    if n < 3 {
        return Err(BrushError::BadSize(n));
    }
    if !(a < b && b < n) {
        return Err(BrushError::NotAnArc((a, b)));
    }
    let half = n / 2;
    let (a, b) = (a + 1, b + 1);
    let odd = n % 2 == 1;
    Ok(if a < half {
        if b <= half {
            TtCase::IV
        } else if b == half + 1 {
            if odd {
                TtCase::III
            } else {
                TtCase::II
            }
        } else {
            TtCase::I
        }
    } else if a == half {
        if b == half + 1 {
            if odd {
                TtCase::VI
            } else {
                TtCase::VII
            }
        } else {
            TtCase::VIII
        }
    } else {
        TtCase::V
    })
}

/// Plan for `TT_n − e`, obtained from the transitive plan by moving or
/// dropping one brush according to the case of `e`.
pub fn strategy_tt_minus_arc(n: usize, e: Arc) -> Result<BrushPlan> {
    let case = tt_minus_arc_case(n, e)?;
    let (a, b) = e;
    let mut initial = transitive_initial(n);
    match case {
        TtCase::I | TtCase::II | TtCase::VII | TtCase::VIII => initial[a] -= 1,
        TtCase::III | TtCase::IV | TtCase::VI => {
            initial[a] -= 1;
            initial[b] += 1;
        }
        TtCase::V => {}
    }
    Ok(BrushPlan::new(initial, (0..n).collect()))
}
