//! The generation pipeline: chaotic initial table, then 34 sub-graph
//! tour rewrites.
//!
//! One chaotic stream threads through every stage in program order: 1000
//! burn-in steps, the coupon-collector loop that fills the initial table,
//! then 28 edge-weight draws per sub-graph. The 32 linear windows are
//! processed in ascending order, followed by the middle window (positions
//! 124..=131) and finally the last window (positions 248..=255) again with
//! fresh weights. Each window rewrite is a permutation of 8 entries, so
//! bijectivity of the initial table is preserved throughout.

use crate::chaos::{ChaosParams, ChaosStream, DEFAULT_BURN_IN};
use crate::sbox::SBox;
use crate::tsp::{self, Tour, WeightMatrix, EDGES, NODES};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Linear windows the table is split into.
pub const LINEAR_SUBGRAPHS: usize = 32;
/// Linear windows plus the middle and last passes.
pub const SUBGRAPH_COUNT: usize = 34;
/// First position of the middle window (the central 8 of 0..=255).
pub const MIDDLE_WINDOW_START: usize = 124;
/// First position of the last window.
pub const LAST_WINDOW_START: usize = 248;
/// Byte draws allowed while collecting the 256 distinct initial values;
/// hitting this means the trajectory is degenerate or periodic.
pub const MAX_INITIAL_DRAWS: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PipelineError {
    #[error("failed to collect 256 distinct bytes within {limit} draws")]
    IterationCap { limit: u64 },
    #[error("sub-graph positions must be strictly ascending and below 256, got {0:?}")]
    InvalidPositions([usize; NODES]),
}

/// Eight S-box positions and the values sitting there when the sub-graph
/// was formed. Node index `k` of a tour refers to `positions[k]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubGraph {
    positions: [usize; NODES],
    nodes: [u8; NODES],
}

impl SubGraph {
    pub fn new(positions: [usize; NODES], s: &SBox) -> Result<Self, PipelineError> {
        let ascending = positions.windows(2).all(|w| w[0] < w[1]);
        if !ascending || positions[NODES - 1] > 255 {
            return Err(PipelineError::InvalidPositions(positions));
        }
        let nodes = positions.map(|p| s.table()[p]);
        Ok(Self { positions, nodes })
    }

    /// Contiguous window starting at `start`.
    pub fn window(s: &SBox, start: usize) -> Self {
        assert!(start + NODES <= 256, "window start {start} out of range");
        let positions = core::array::from_fn(|k| start + k);
        Self::new(positions, s).expect("contiguous window is valid")
    }

    pub fn positions(&self) -> &[usize; NODES] {
        &self.positions
    }

    pub fn nodes(&self) -> &[u8; NODES] {
        &self.nodes
    }
}

/// Collects chaotic bytes until all 256 values have appeared, skipping
/// duplicates; the table lists values in order of first appearance.
pub fn gen_initial_sbox(stream: &mut ChaosStream) -> Result<SBox, PipelineError> {
    let mut table = [0u8; 256];
    let mut seen = [false; 256];
    let mut len = 0usize;
    let mut draws = 0u64;
    while len < 256 {
        if draws == MAX_INITIAL_DRAWS {
            return Err(PipelineError::IterationCap {
                limit: MAX_INITIAL_DRAWS,
            });
        }
        let byte = stream.next_byte();
        draws += 1;
        if !seen[usize::from(byte)] {
            seen[usize::from(byte)] = true;
            table[len] = byte;
            len += 1;
        }
    }
    Ok(SBox::from_array(table))
}

/// Splits the table into 32 contiguous 8-position windows.
pub fn decompose_linear(s: &SBox) -> Vec<SubGraph> {
    (0..LINEAR_SUBGRAPHS)
        .map(|k| SubGraph::window(s, NODES * k))
        .collect()
}

/// Draws the 28 edge weights for one sub-graph, one stream step per edge,
/// in lexicographic `(i, j)` order with `i < j`.
pub fn assign_weights(stream: &mut ChaosStream) -> WeightMatrix {
    let mut upper = [0u8; EDGES];
    for w in upper.iter_mut() {
        *w = stream.next_weight();
    }
    WeightMatrix::from_upper_triangle(&upper).expect("drawn weights lie in [1,255]")
}

/// Rewrites the sub-graph's window in tour visitation order: the window's
/// ascending positions receive `nodes[order[0]], nodes[order[1]], ...`.
/// The other 248 entries are untouched.
pub fn apply_tour(s: &mut SBox, g: &SubGraph, tour: &Tour) {
    debug_assert!(
        g.positions
            .iter()
            .zip(g.nodes)
            .all(|(&p, n)| s.table()[p] == n),
        "sub-graph snapshot is stale for this S-box"
    );
    let order = tour.order();
    let table = s.table_mut();
    for k in 0..NODES {
        table[g.positions[k]] = g.nodes[usize::from(order[k])];
    }
}

/// Weights, tour, and window snapshot of one completed pass.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SubGraphRecord {
    pub positions: [usize; NODES],
    pub nodes: [u8; NODES],
    pub weights: WeightMatrix,
    pub tour: Tour,
    pub tour_cost: u32,
}

fn run_pass(s: &mut SBox, stream: &mut ChaosStream, g: SubGraph) -> SubGraphRecord {
    let weights = assign_weights(stream);
    let tour = tsp::solve_tsp(&weights);
    apply_tour(s, &g, &tour);
    SubGraphRecord {
        positions: g.positions,
        nodes: g.nodes,
        weights,
        tour,
        tour_cost: tsp::tour_cost(&weights, &tour),
    }
}

/// The 33rd pass, over the middle window.
pub fn middle_pass(s: &mut SBox, stream: &mut ChaosStream) -> SubGraphRecord {
    let g = SubGraph::window(s, MIDDLE_WINDOW_START);
    run_pass(s, stream, g)
}

/// The 34th pass, over the last window. Its positions coincide with linear
/// window 31; the window is still reprocessed with fresh weights.
pub fn final_pass(s: &mut SBox, stream: &mut ChaosStream) -> SubGraphRecord {
    let g = SubGraph::window(s, LAST_WINDOW_START);
    run_pass(s, stream, g)
}

/// Full audit record of one generation run.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct GenerationTrace {
    pub params: ChaosParams,
    /// Transient steps discarded before the first byte draw.
    pub burn_in: u64,
    /// Byte draws consumed by the coupon-collector loop.
    pub initial_draws: u64,
    /// Total map steps over the whole run.
    pub total_steps: u64,
    pub initial_sbox: SBox,
    /// Exactly 34 entries: the linear passes in ascending order, then the
    /// middle pass, then the last pass.
    pub records: Vec<SubGraphRecord>,
    /// Post-pass snapshots, one per record; stripped from serialized
    /// traces unless explicitly requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub snapshots: Option<Vec<SBox>>,
    pub final_sbox: SBox,
}

impl GenerationTrace {
    /// Drops the per-pass snapshots, leaving the compact trace.
    pub fn without_snapshots(mut self) -> Self {
        self.snapshots = None;
        self
    }
}

/// Runs the whole pipeline for one parameter pair.
pub fn generate_sbox(params: ChaosParams) -> Result<(SBox, GenerationTrace), PipelineError> {
    let mut stream = ChaosStream::new(params);
    stream.burn_in(DEFAULT_BURN_IN);
    let steps_before = stream.iterations();

    let initial = gen_initial_sbox(&mut stream)?;
    let initial_draws = stream.iterations() - steps_before;

    let mut s = initial;
    let mut records = Vec::with_capacity(SUBGRAPH_COUNT);
    let mut snapshots = Vec::with_capacity(SUBGRAPH_COUNT);

    for g in decompose_linear(&s) {
        records.push(run_pass(&mut s, &mut stream, g));
        snapshots.push(s);
    }
    records.push(middle_pass(&mut s, &mut stream));
    snapshots.push(s);
    records.push(final_pass(&mut s, &mut stream));
    snapshots.push(s);

    let trace = GenerationTrace {
        params,
        burn_in: DEFAULT_BURN_IN,
        initial_draws,
        total_steps: stream.iterations(),
        initial_sbox: initial,
        records,
        snapshots: Some(snapshots),
        final_sbox: s,
    };
    Ok((s, trace))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> ChaosParams {
        ChaosParams::new(0.3, 0.499).unwrap()
    }

    #[test]
    fn initial_sbox_is_a_permutation() {
        let mut stream = ChaosStream::new(params());
        stream.burn_in(DEFAULT_BURN_IN);
        let s = gen_initial_sbox(&mut stream).unwrap();
        assert!(s.is_bijective());
    }

    #[test]
    fn initial_sbox_deterministic() {
        let run = || {
            let mut stream = ChaosStream::new(params());
            stream.burn_in(DEFAULT_BURN_IN);
            gen_initial_sbox(&mut stream).unwrap()
        };
        assert_eq!(run(), run());
    }

    #[test]
    fn linear_decomposition_partitions_positions() {
        let s = SBox::identity();
        let subgraphs = decompose_linear(&s);
        assert_eq!(subgraphs.len(), LINEAR_SUBGRAPHS);
        assert_eq!(subgraphs[0].positions(), &[0, 1, 2, 3, 4, 5, 6, 7]);
        assert_eq!(
            subgraphs[31].positions(),
            &[248, 249, 250, 251, 252, 253, 254, 255]
        );
        let mut covered = [false; 256];
        for g in &subgraphs {
            for &p in g.positions() {
                assert!(!covered[p], "position {p} covered twice");
                covered[p] = true;
            }
        }
        assert!(covered.iter().all(|&c| c));
    }

    #[test]
    fn subgraph_rejects_bad_positions() {
        let s = SBox::identity();
        assert!(SubGraph::new([0, 1, 2, 3, 4, 5, 7, 6], &s).is_err());
        assert!(SubGraph::new([0, 0, 1, 2, 3, 4, 5, 6], &s).is_err());
        assert!(SubGraph::new([249, 250, 251, 252, 253, 254, 255, 256], &s).is_err());
    }

    #[test]
    fn weight_assignment_consumes_28_steps_in_lex_order() {
        let mut stream = ChaosStream::new(params());
        stream.burn_in(DEFAULT_BURN_IN);
        let before = stream.iterations();

        let mut probe = stream.clone();
        let first = probe.next_weight();
        let mut probe27 = stream.clone();
        let mut last = 0;
        for _ in 0..28 {
            last = probe27.next_weight();
        }

        let w = assign_weights(&mut stream);
        assert_eq!(stream.iterations() - before, 28);
        assert_eq!(w.weight(0, 1), first, "first draw lands on edge (0,1)");
        assert_eq!(w.weight(6, 7), last, "last draw lands on edge (6,7)");
        for i in 0..NODES {
            assert_eq!(w.weight(i, i), 0);
            for j in 0..NODES {
                assert_eq!(w.weight(i, j), w.weight(j, i));
            }
        }
    }

    #[test]
    fn identity_tour_leaves_window_unchanged() {
        let mut s = SBox::identity();
        let g = SubGraph::window(&s, 16);
        apply_tour(&mut s, &g, &Tour::identity());
        assert_eq!(s, SBox::identity());
    }

    #[test]
    fn apply_tour_permutes_within_window_only() {
        let mut s = SBox::identity();
        let before = s;
        let g = SubGraph::window(&s, 40);
        let tour = Tour::new([0, 3, 1, 6, 2, 7, 5, 4]).unwrap();
        apply_tour(&mut s, &g, &tour);

        let mut window_before: Vec<u8> = (40..48).map(|p| before.table()[p]).collect();
        let mut window_after: Vec<u8> = (40..48).map(|p| s.table()[p]).collect();
        assert_ne!(window_before, window_after);
        window_before.sort_unstable();
        window_after.sort_unstable();
        assert_eq!(window_before, window_after, "window is permuted in place");

        for p in 0..256 {
            if !(40..48).contains(&p) {
                assert_eq!(s.table()[p], before.table()[p], "position {p} moved");
            }
        }
        assert!(s.is_bijective());
    }

    #[test]
    fn middle_and_final_passes_touch_only_their_windows() {
        let (mut s, _) = generate_sbox(params()).unwrap();
        let mut stream = ChaosStream::new(params());
        stream.burn_in(5);

        let before = s;
        let rec = middle_pass(&mut s, &mut stream);
        assert_eq!(rec.positions, core::array::from_fn(|k| 124 + k));
        assert_eq!(stream.iterations(), 5 + 28);
        for p in 0..256 {
            if !(124..132).contains(&p) {
                assert_eq!(s.table()[p], before.table()[p]);
            }
        }
        assert!(s.is_bijective());

        let before = s;
        let rec = final_pass(&mut s, &mut stream);
        assert_eq!(rec.positions, core::array::from_fn(|k| 248 + k));
        assert_eq!(stream.iterations(), 5 + 56);
        for p in 0..248 {
            assert_eq!(s.table()[p], before.table()[p]);
        }
        assert!(s.is_bijective());
    }

    #[test]
    fn generate_accounts_for_every_stream_step() {
        let (s, trace) = generate_sbox(params()).unwrap();
        assert!(s.is_bijective());
        assert_eq!(trace.records.len(), SUBGRAPH_COUNT);
        assert_eq!(
            trace.total_steps,
            trace.burn_in + trace.initial_draws + (SUBGRAPH_COUNT as u64) * 28
        );
        let snapshots = trace.snapshots.as_ref().unwrap();
        assert_eq!(snapshots.len(), SUBGRAPH_COUNT);
        assert_eq!(*snapshots.last().unwrap(), trace.final_sbox);
        assert_eq!(trace.final_sbox, s);
    }

    #[test]
    fn generate_is_reproducible_through_hex_params() {
        let (s1, t1) = generate_sbox(params()).unwrap();
        let hex = (t1.params.x0_hex(), t1.params.p_hex());
        let reparsed = ChaosParams::from_hex(&hex.0, &hex.1).unwrap();
        let (s2, t2) = generate_sbox(reparsed).unwrap();
        assert_eq!(s1, s2);
        assert_eq!(t1, t2);
    }

    #[test]
    fn trace_json_round_trip() {
        let (_, trace) = generate_sbox(params()).unwrap();
        let compact = trace.clone().without_snapshots();
        let json = serde_json::to_string(&compact).unwrap();
        assert!(!json.contains("snapshots"));
        let back: GenerationTrace = serde_json::from_str(&json).unwrap();
        assert_eq!(back, compact);

        let full = serde_json::to_string(&trace).unwrap();
        assert!(full.contains("snapshots"));
        let back: GenerationTrace = serde_json::from_str(&full).unwrap();
        assert_eq!(back, trace);
    }
}
