//! Strength criteria for 8x8 S-boxes: bijectivity, Walsh-spectrum
//! nonlinearity, strict avalanche criterion, and differential uniformity.
//!
//! Bit conventions are LSB-first throughout: coordinate `j` is bit `j` of
//! the output, input-bit flips XOR `2^i`, and mask dot products are the
//! parity of `x AND w`.

use crate::sbox::SBox;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MetricsError {
    #[error("truth table entries must be 0 or 1, got {value} at index {index}")]
    NotBoolean { index: usize, value: u8 },
}

/// Truth table of one single-bit coordinate of an S-box.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BooleanFunctionTable {
    bits: [u8; 256],
}

impl BooleanFunctionTable {
    pub fn from_bits(bits: [u8; 256]) -> Result<Self, MetricsError> {
        for (index, &value) in bits.iter().enumerate() {
            if value > 1 {
                return Err(MetricsError::NotBoolean { index, value });
            }
        }
        Ok(Self { bits })
    }

    pub fn bits(&self) -> &[u8; 256] {
        &self.bits
    }
}

/// Truth table of bit `j` of the output: `bits[x] = (S(x) >> j) & 1`.
///
/// Panics if `j > 7`.
pub fn coordinate_function(s: &SBox, j: u32) -> BooleanFunctionTable {
    assert!(j < 8, "coordinate index {j} out of range");
    let mut bits = [0u8; 256];
    for (x, bit) in bits.iter_mut().enumerate() {
        *bit = (s.table()[x] >> j) & 1;
    }
    BooleanFunctionTable { bits }
}

/// All 256 correlations of a Boolean function with the linear functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WalshSpectrum {
    coeffs: [i32; 256],
}

impl WalshSpectrum {
    /// Coefficient for mask `w`: `sum_x (-1)^(f(x) XOR parity(x AND w))`.
    pub fn coeffs(&self) -> &[i32; 256] {
        &self.coeffs
    }

    pub fn max_abs(&self) -> u32 {
        self.coeffs
            .iter()
            .map(|c| c.unsigned_abs())
            .max()
            .expect("non-empty")
    }
}

/// Walsh spectrum by in-place fast Walsh-Hadamard transform of the sign
/// vector `(-1)^f(x)`, butterfly size doubling from 1 to 128.
pub fn walsh_spectrum(f: &BooleanFunctionTable) -> WalshSpectrum {
    let mut coeffs = [0i32; 256];
    for (c, &bit) in coeffs.iter_mut().zip(&f.bits) {
        *c = 1 - 2 * i32::from(bit);
    }
    let mut half = 1;
    while half < 256 {
        for block in (0..256).step_by(2 * half) {
            for i in block..block + half {
                let (a, b) = (coeffs[i], coeffs[i + half]);
                coeffs[i] = a + b;
                coeffs[i + half] = a - b;
            }
        }
        half *= 2;
    }
    debug_assert_eq!(
        coeffs
            .iter()
            .map(|&c| i64::from(c) * i64::from(c))
            .sum::<i64>(),
        65536,
        "Parseval violated"
    );
    WalshSpectrum { coeffs }
}

/// Hamming distance to the nearest affine function:
/// `128 - max|coeff| / 2`.
pub fn nonlinearity(f: &BooleanFunctionTable) -> u32 {
    let max_abs = walsh_spectrum(f).max_abs();
    // every coefficient of a 256-entry +/-1 vector is even, and Parseval
    // caps the magnitude at 256; a violation means the transform is broken
    assert!(
        max_abs.is_multiple_of(2) && max_abs <= 256,
        "walsh magnitude {max_abs} outside contract"
    );
    128 - max_abs / 2
}

/// Avalanche dependence matrix: entry `(i, j)` is the fraction of inputs
/// for which flipping input bit `i` flips output bit `j`.
pub fn sac_matrix(s: &SBox) -> [[f64; 8]; 8] {
    let mut m = [[0f64; 8]; 8];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            let mut count = 0u32;
            for x in 0..=255u8 {
                let delta = s.get(x) ^ s.get(x ^ (1 << i));
                count += u32::from((delta >> j) & 1);
            }
            *entry = f64::from(count) / 256.0;
        }
    }
    m
}

/// Mean of the 64 dependence-matrix entries; 0.5 is the ideal.
pub fn sac_average(s: &SBox) -> f64 {
    let m = sac_matrix(s);
    m.iter().flatten().sum::<f64>() / 64.0
}

/// Difference distribution table: `counts[dx][dy]` is the number of inputs
/// `x` with `S(x) XOR S(x XOR dx) = dy`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ddt {
    counts: Box<[[u16; 256]; 256]>,
}

impl Ddt {
    pub fn get(&self, dx: u8, dy: u8) -> u16 {
        self.counts[usize::from(dx)][usize::from(dy)]
    }

    pub fn rows(&self) -> &[[u16; 256]; 256] {
        &self.counts
    }

    /// Largest entry over nonzero input differences, with the first
    /// `(dx, dy)` attaining it in row-major scan order.
    pub fn max_over_nonzero_dx(&self) -> (u16, (u8, u8)) {
        let mut best = 0u16;
        let mut at = (1u8, 0u8);
        for dx in 1..=255u8 {
            for dy in 0..=255u8 {
                let c = self.get(dx, dy);
                if c > best {
                    best = c;
                    at = (dx, dy);
                }
            }
        }
        (best, at)
    }
}

pub fn difference_distribution_table(s: &SBox) -> Ddt {
    let mut counts = Box::new([[0u16; 256]; 256]);
    for dx in 0..=255u8 {
        let row = &mut counts[usize::from(dx)];
        for x in 0..=255u8 {
            let dy = s.get(x) ^ s.get(x ^ dx);
            row[usize::from(dy)] += 1;
        }
    }
    Ddt { counts }
}

/// Maximum DDT entry over nonzero input differences.
pub fn differential_uniformity(s: &SBox) -> u16 {
    difference_distribution_table(s).max_over_nonzero_dx().0
}

/// Full scorecard for one S-box.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct MetricsReport {
    pub bijective: bool,
    /// Per-coordinate nonlinearity, LSB-first.
    pub nl: [u32; 8],
    pub nl_min: u32,
    pub nl_max: u32,
    pub nl_mean: f64,
    pub sac: [[f64; 8]; 8],
    pub sac_avg: f64,
    pub du: u16,
    /// First `(dx, dy)` attaining the maximum, row-major scan.
    pub ddt_max_entry_location: (u8, u8),
}

pub fn analyze(s: &SBox) -> MetricsReport {
    let nl: [u32; 8] = core::array::from_fn(|j| nonlinearity(&coordinate_function(s, j as u32)));
    let sac = sac_matrix(s);
    let sac_avg = sac.iter().flatten().sum::<f64>() / 64.0;
    let (du, ddt_max_entry_location) = difference_distribution_table(s).max_over_nonzero_dx();
    MetricsReport {
        bijective: s.is_bijective(),
        nl,
        nl_min: *nl.iter().min().expect("non-empty"),
        nl_max: *nl.iter().max().expect("non-empty"),
        nl_mean: f64::from(nl.iter().sum::<u32>()) / 8.0,
        sac,
        sac_avg,
        du,
        ddt_max_entry_location,
    }
}

impl MetricsReport {
    /// Multi-line human-readable summary; means are printed to 4 decimals.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("bijective: {}\n", self.bijective));
        let nl_row: Vec<String> = self.nl.iter().map(|v| v.to_string()).collect();
        out.push_str(&format!(
            "nonlinearity n1..n8 (LSB-first): {}\n",
            nl_row.join(" ")
        ));
        out.push_str(&format!(
            "nonlinearity min/max/mean: {} / {} / {:.4}\n",
            self.nl_min, self.nl_max, self.nl_mean
        ));
        out.push_str(&format!("sac average: {:.4}\n", self.sac_avg));
        out.push_str("sac matrix (input bit i rows, output bit j cols):\n");
        for row in &self.sac {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:.4}")).collect();
            out.push_str(&format!("  {}\n", cells.join(" ")));
        }
        out.push_str(&format!(
            "differential uniformity: {} (max DDT entry at dx={}, dy={})\n",
            self.du, self.ddt_max_entry_location.0, self.ddt_max_entry_location.1
        ));
        out
    }
}
