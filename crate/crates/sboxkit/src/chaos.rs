//! Piece-wise linear chaotic map (PWLCM) state machine.
//!
//! The map is
//!
//! ```text
//! x(n+1) = x(n) / p          if 0 < x(n) <= p
//!          (1 - x(n)) / (1 - p)   otherwise
//! ```
//!
//! with state `x` and control parameter `p` both in the open unit interval.
//! All arithmetic is 64-bit IEEE-754 with round-to-nearest-even, so a
//! trajectory is reproducible bit-for-bit from `(x0, p)` on any conforming
//! platform. Byte and edge-weight extraction scale the state by `10^10`,
//! floor, and reduce modulo 256 (bytes) or 255 plus one (weights).

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Transient iterations discarded before any byte is drawn.
pub const DEFAULT_BURN_IN: u64 = 1000;

/// Scale applied to the state before flooring; `10^10` is exactly
/// representable in an f64 and keeps the floored product below `2^53`.
const DIGIT_SCALE: f64 = 1e10;

/// Replacement state when a step lands exactly on 0 or 1 (possible only on
/// a measure-zero set, e.g. `x == p` maps to 1.0). Any fixed in-range value
/// keeps the trajectory deterministic; this one is documented and tested.
const BOUNDARY_REPAIR: f64 = 0.5 - 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ChaosError {
    #[error("initial state x0 must lie in the open interval (0,1), got {0}")]
    InitialStateOutOfRange(f64),
    #[error("control parameter p must lie in the open interval (0,1), got {0}")]
    ControlParamOutOfRange(f64),
    #[error("map state x must lie in the open interval (0,1), got {0}")]
    StateOutOfRange(f64),
    #[error("expected 16 hex digits encoding an IEEE-754 double, got {0:?}")]
    BadHexLiteral(String),
}

/// Validated `(x0, p)` pair seeding one chaotic trajectory.
///
/// Serializes as `{"x0_hex", "p_hex", "x0", "p"}`; the 16-digit hex bit
/// patterns are authoritative on read, the decimal fields are
/// human-readable mirrors and are ignored when parsing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChaosParams {
    x0: f64,
    p: f64,
}

impl ChaosParams {
    pub fn new(x0: f64, p: f64) -> Result<Self, ChaosError> {
        if !(x0 > 0.0 && x0 < 1.0) {
            return Err(ChaosError::InitialStateOutOfRange(x0));
        }
        if !(p > 0.0 && p < 1.0) {
            return Err(ChaosError::ControlParamOutOfRange(p));
        }
        Ok(Self { x0, p })
    }

    /// Rebuilds params from the authoritative bit-pattern encoding.
    pub fn from_hex(x0_hex: &str, p_hex: &str) -> Result<Self, ChaosError> {
        Self::new(f64_from_hex(x0_hex)?, f64_from_hex(p_hex)?)
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// IEEE-754 bit pattern of `x0` as 16 lowercase hex digits.
    pub fn x0_hex(&self) -> String {
        format!("{:016x}", self.x0.to_bits())
    }

    /// IEEE-754 bit pattern of `p` as 16 lowercase hex digits.
    pub fn p_hex(&self) -> String {
        format!("{:016x}", self.p.to_bits())
    }
}

/// Parses a 16-hex-digit IEEE-754 bit pattern into the f64 it encodes.
pub fn f64_from_hex(s: &str) -> Result<f64, ChaosError> {
    if s.len() != 16 || !s.bytes().all(|b| b.is_ascii_hexdigit()) {
        return Err(ChaosError::BadHexLiteral(s.to_owned()));
    }
    let bits = u64::from_str_radix(s, 16).map_err(|_| ChaosError::BadHexLiteral(s.to_owned()))?;
    Ok(f64::from_bits(bits))
}

#[derive(Serialize)]
struct ParamsWireOut<'a> {
    x0_hex: &'a str,
    p_hex: &'a str,
    x0: f64,
    p: f64,
}

#[derive(Deserialize)]
struct ParamsWireIn {
    x0_hex: String,
    p_hex: String,
}

impl Serialize for ChaosParams {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ParamsWireOut {
            x0_hex: &self.x0_hex(),
            p_hex: &self.p_hex(),
            x0: self.x0,
            p: self.p,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ChaosParams {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = ParamsWireIn::deserialize(deserializer)?;
        ChaosParams::from_hex(&wire.x0_hex, &wire.p_hex).map_err(D::Error::custom)
    }
}

/// One step of the map, with the domain checked.
pub fn pwlcm_step(x: f64, p: f64) -> Result<f64, ChaosError> {
    if !(x > 0.0 && x < 1.0) {
        return Err(ChaosError::StateOutOfRange(x));
    }
    if !(p > 0.0 && p < 1.0) {
        return Err(ChaosError::ControlParamOutOfRange(p));
    }
    Ok(step_repaired(x, p))
}

fn step_repaired(x: f64, p: f64) -> f64 {
    let next = if x <= p { x / p } else { (1.0 - x) / (1.0 - p) };
    if next <= 0.0 || next >= 1.0 {
        BOUNDARY_REPAIR
    } else {
        next
    }
}

fn scaled_floor(x: f64) -> u64 {
    debug_assert!(x > 0.0 && x < 1.0);
    (x * DIGIT_SCALE).floor() as u64
}

/// `floor(x * 10^10) mod 256` for `x` in (0,1).
pub fn extract_byte(x: f64) -> u8 {
    (scaled_floor(x) % 256) as u8
}

/// Sequentially stepped PWLCM trajectory with an iteration counter.
///
/// One stream drives every stage of a generation run in program order;
/// advance it from a single thread only. Distinct streams are independent.
#[derive(Debug, Clone)]
pub struct ChaosStream {
    params: ChaosParams,
    x: f64,
    n: u64,
}

impl ChaosStream {
    pub fn new(params: ChaosParams) -> Self {
        Self {
            params,
            x: params.x0(),
            n: 0,
        }
    }

    pub fn params(&self) -> ChaosParams {
        self.params
    }

    /// Current state; always in (0,1).
    pub fn state(&self) -> f64 {
        self.x
    }

    /// Number of map steps taken so far.
    pub fn iterations(&self) -> u64 {
        self.n
    }

    /// Advances one step and returns the new state.
    pub fn step(&mut self) -> f64 {
        self.x = step_repaired(self.x, self.params.p());
        self.n += 1;
        self.x
    }

    /// Advances `count` steps, discarding the intermediate values.
    pub fn burn_in(&mut self, count: u64) {
        for _ in 0..count {
            self.step();
        }
    }

    /// Steps once, then extracts a byte from the new state.
    pub fn next_byte(&mut self) -> u8 {
        extract_byte(self.step())
    }

    /// Steps once, then extracts an edge weight in `[1, 255]` as
    /// `(floor(x * 10^10) mod 255) + 1`.
    pub fn next_weight(&mut self) -> u8 {
        (scaled_floor(self.step()) % 255 + 1) as u8
    }
}
