//! The 256-entry byte lookup table under construction or analysis.

use serde::de::{self, SeqAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

/// An 8x8 substitution box: 256 byte values indexed by position.
///
/// The table is not forced to be bijective; generation guarantees it, while
/// analysis accepts arbitrary tables and reports bijectivity as a finding.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct SBox {
    table: [u8; 256],
}

impl SBox {
    pub const fn from_array(table: [u8; 256]) -> Self {
        Self { table }
    }

    /// The identity mapping `S(x) = x`.
    pub fn identity() -> Self {
        let mut table = [0u8; 256];
        for (x, entry) in table.iter_mut().enumerate() {
            *entry = x as u8;
        }
        Self { table }
    }

    pub fn from_slice(values: &[u8]) -> Option<Self> {
        let table: [u8; 256] = values.try_into().ok()?;
        Some(Self { table })
    }

    pub fn get(&self, x: u8) -> u8 {
        self.table[usize::from(x)]
    }

    pub fn table(&self) -> &[u8; 256] {
        &self.table
    }

    pub(crate) fn table_mut(&mut self) -> &mut [u8; 256] {
        &mut self.table
    }

    /// True iff every byte value occurs exactly once.
    pub fn is_bijective(&self) -> bool {
        let mut seen = [false; 256];
        for &v in &self.table {
            if seen[usize::from(v)] {
                return false;
            }
            seen[usize::from(v)] = true;
        }
        true
    }
}

impl fmt::Debug for SBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SBox")
            .field("table", &&self.table[..])
            .finish()
    }
}

impl Serialize for SBox {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.table.iter())
    }
}

impl<'de> Deserialize<'de> for SBox {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct TableVisitor;

        impl<'de> Visitor<'de> for TableVisitor {
            type Value = SBox;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a sequence of exactly 256 byte values")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<SBox, A::Error> {
                let mut table = [0u8; 256];
                for (i, entry) in table.iter_mut().enumerate() {
                    *entry = seq
                        .next_element()?
                        .ok_or_else(|| de::Error::invalid_length(i, &self))?;
                }
                if seq.next_element::<de::IgnoredAny>()?.is_some() {
                    return Err(de::Error::invalid_length(257, &self));
                }
                Ok(SBox { table })
            }
        }

        deserializer.deserialize_seq(TableVisitor)
    }
}
