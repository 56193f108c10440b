//! Exact minimum-weight Hamiltonian cycles on 8-node complete graphs.
//!
//! Tours are kept in a canonical form that quotients out rotation and
//! reversal: the cycle starts at node 0 and runs in the direction that
//! makes the second node smaller than the last. With only 2520 canonical
//! cycles on 8 nodes, the solver enumerates them all, so the returned tour
//! is the global minimum with a fixed lexicographic tie-break.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Nodes per sub-graph.
pub const NODES: usize = 8;
/// Undirected edges per sub-graph: 8 * 7 / 2.
pub const EDGES: usize = 28;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TspError {
    #[error("weight matrix diagonal must be zero at [{0}][{0}]")]
    NonZeroDiagonal(usize),
    #[error("weight matrix must be symmetric, differs at [{0}][{1}]")]
    Asymmetric(usize, usize),
    #[error("edge weight at [{0}][{1}] must lie in [1,255]")]
    WeightOutOfRange(usize, usize),
    #[error("tour must visit each of the 8 nodes exactly once, got {0:?}")]
    NotAPermutation([u8; NODES]),
    #[error("tour is not canonical (must start at 0 with order[1] < order[7]), got {0:?}")]
    NotCanonical([u8; NODES]),
}

/// Symmetric 8x8 edge-weight matrix with zero diagonal and off-diagonal
/// weights in `[1, 255]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "[[u8; NODES]; NODES]", into = "[[u8; NODES]; NODES]")]
pub struct WeightMatrix {
    w: [[u8; NODES]; NODES],
}

impl WeightMatrix {
    #[allow(clippy::needless_range_loop)] // triangular scan reads both w[i][j] and w[j][i]
    pub fn new(w: [[u8; NODES]; NODES]) -> Result<Self, TspError> {
        for i in 0..NODES {
            if w[i][i] != 0 {
                return Err(TspError::NonZeroDiagonal(i));
            }
            for j in (i + 1)..NODES {
                if w[i][j] != w[j][i] {
                    return Err(TspError::Asymmetric(i, j));
                }
                if w[i][j] == 0 {
                    return Err(TspError::WeightOutOfRange(i, j));
                }
            }
        }
        Ok(Self { w })
    }

    /// Builds the matrix from the 28 upper-triangle weights listed in
    /// lexicographic `(i, j)` order, `i < j`.
    #[allow(clippy::needless_range_loop)] // walks the upper triangle only
    pub fn from_upper_triangle(weights: &[u8; EDGES]) -> Result<Self, TspError> {
        let mut w = [[0u8; NODES]; NODES];
        let mut k = 0;
        for i in 0..NODES {
            for j in (i + 1)..NODES {
                if weights[k] == 0 {
                    return Err(TspError::WeightOutOfRange(i, j));
                }
                w[i][j] = weights[k];
                w[j][i] = weights[k];
                k += 1;
            }
        }
        Ok(Self { w })
    }

    pub fn weight(&self, i: usize, j: usize) -> u8 {
        self.w[i][j]
    }

    pub fn rows(&self) -> &[[u8; NODES]; NODES] {
        &self.w
    }
}

impl TryFrom<[[u8; NODES]; NODES]> for WeightMatrix {
    type Error = TspError;
    fn try_from(w: [[u8; NODES]; NODES]) -> Result<Self, Self::Error> {
        Self::new(w)
    }
}

impl From<WeightMatrix> for [[u8; NODES]; NODES] {
    fn from(m: WeightMatrix) -> Self {
        m.w
    }
}

/// Canonical Hamiltonian cycle: a permutation of `0..8` with `order[0] == 0`
/// and `order[1] < order[7]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[u8; NODES]", into = "[u8; NODES]")]
pub struct Tour {
    order: [u8; NODES],
}

impl Tour {
    pub fn new(order: [u8; NODES]) -> Result<Self, TspError> {
        let mut seen = [false; NODES];
        for &v in &order {
            if usize::from(v) >= NODES || seen[usize::from(v)] {
                return Err(TspError::NotAPermutation(order));
            }
            seen[usize::from(v)] = true;
        }
        if order[0] != 0 || order[1] > order[NODES - 1] {
            return Err(TspError::NotCanonical(order));
        }
        Ok(Self { order })
    }

    /// Rotates and, if needed, reverses an arbitrary cycle ordering into
    /// canonical form.
    pub fn canonicalize(cycle: [u8; NODES]) -> Result<Self, TspError> {
        let mut seen = [false; NODES];
        for &v in &cycle {
            if usize::from(v) >= NODES || seen[usize::from(v)] {
                return Err(TspError::NotAPermutation(cycle));
            }
            seen[usize::from(v)] = true;
        }
        let start = cycle.iter().position(|&v| v == 0).expect("0 is present");
        let mut order = [0u8; NODES];
        for k in 0..NODES {
            order[k] = cycle[(start + k) % NODES];
        }
        if order[1] > order[NODES - 1] {
            order[1..].reverse();
        }
        Ok(Self { order })
    }

    pub fn identity() -> Self {
        Self {
            order: [0, 1, 2, 3, 4, 5, 6, 7],
        }
    }

    pub fn order(&self) -> &[u8; NODES] {
        &self.order
    }
}

impl TryFrom<[u8; NODES]> for Tour {
    type Error = TspError;
    fn try_from(order: [u8; NODES]) -> Result<Self, Self::Error> {
        Self::new(order)
    }
}

impl From<Tour> for [u8; NODES] {
    fn from(t: Tour) -> Self {
        t.order
    }
}

/// Sum of the 8 cycle edges, including the closing edge back to the start.
pub fn tour_cost(w: &WeightMatrix, tour: &Tour) -> u32 {
    let order = tour.order();
    (0..NODES)
        .map(|k| u32::from(w.weight(usize::from(order[k]), usize::from(order[(k + 1) % NODES]))))
        .sum()
}

/// Returns the minimum-cost canonical tour; cost ties resolve to the
/// lexicographically smallest order.
///
/// Exhaustive over all 2520 canonical cycles. Candidates are compared as
/// `(cost, order)` pairs, so the result does not depend on enumeration
/// order.
pub fn solve_tsp(w: &WeightMatrix) -> Tour {
    let mut tail: [u8; NODES - 1] = [1, 2, 3, 4, 5, 6, 7];
    let mut best: Option<(u32, [u8; NODES])> = None;
    loop {
        if tail[0] < tail[NODES - 2] {
            let mut order = [0u8; NODES];
            order[1..].copy_from_slice(&tail);
            let mut cost = 0u32;
            for k in 0..NODES {
                cost +=
                    u32::from(w.weight(usize::from(order[k]), usize::from(order[(k + 1) % NODES])));
            }
            let candidate = (cost, order);
            if best.is_none_or(|b| candidate < b) {
                best = Some(candidate);
            }
        }
        if !next_permutation(&mut tail) {
            break;
        }
    }
    let (_, order) = best.expect("at least one canonical tour exists");
    Tour { order }
}

/// Advances `a` to its next lexicographic permutation; false once `a` is
/// the last one.
fn next_permutation(a: &mut [u8]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Optimal tour cost by Held-Karp dynamic programming over vertex subsets.
///
/// Independent of [`solve_tsp`]'s enumeration; the two must agree on cost
/// for every matrix.
pub fn held_karp_cost(w: &WeightMatrix) -> u32 {
    const FULL: usize = (1 << (NODES - 1)) - 1; // subsets of nodes 1..=7
    const INF: u32 = u32::MAX / 2;
    // dp[mask][last]: cheapest path from node 0 through exactly the nodes
    // in mask, ending at node last+1
    let mut dp = vec![[INF; NODES - 1]; FULL + 1];
    for last in 0..NODES - 1 {
        dp[1 << last][last] = u32::from(w.weight(0, last + 1));
    }
    for mask in 1..=FULL {
        for last in 0..NODES - 1 {
            if mask & (1 << last) == 0 || dp[mask][last] == INF {
                continue;
            }
            let base = dp[mask][last];
            for next in 0..NODES - 1 {
                if mask & (1 << next) != 0 {
                    continue;
                }
                let cand = base + u32::from(w.weight(last + 1, next + 1));
                let slot = &mut dp[mask | (1 << next)][next];
                if cand < *slot {
                    *slot = cand;
                }
            }
        }
    }
    (0..NODES - 1)
        .map(|last| dp[FULL][last] + u32::from(w.weight(last + 1, 0)))
        .min()
        .expect("non-empty")
}
