//! Deterministic synthesis and analysis of 8x8 cryptographic substitution boxes.
//!
//! Generation reorders a chaotically seeded byte permutation through exact
//! travelling-salesman tours: a piece-wise linear chaotic map emits the
//! initial 256-entry table and all edge weights, the table is split into
//! 8-node complete sub-graphs, and each sub-graph's minimum-weight
//! Hamiltonian cycle dictates how its window of the table is rewritten.
//!
//! Analysis scores any 256-entry byte table against the standard strength
//! criteria: bijectivity, per-coordinate nonlinearity from the Walsh
//! spectrum, the strict avalanche criterion, and differential uniformity
//! from the difference distribution table.
//!
//! Everything is bit-for-bit reproducible: generation is a pure function of
//! the chaotic parameters `(x0, p)`, which round-trip losslessly through
//! their IEEE-754 hex encodings.

pub mod chaos;
pub mod compare;
pub mod gridfile;
pub mod metrics;
pub mod pipeline;
pub mod sbox;
pub mod sweep;
pub mod tsp;

pub use chaos::{ChaosParams, ChaosStream};
pub use metrics::MetricsReport;
pub use pipeline::{generate_sbox, GenerationTrace};
pub use sbox::SBox;
