//! Text grid encoding of an S-box: 16 lines of 16 values, row-major.
//!
//! Lines whose first non-blank character is `#` are comments. Values are
//! decimal by default; the hex variant writes two-digit lowercase hex and
//! the parser then accepts an optional `0x`/`0X` prefix per token.

use crate::sbox::SBox;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Radix {
    #[default]
    Decimal,
    Hex,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GridParseError {
    #[error("line {line}: token {token:?} is not a {radix} value in [0,255]")]
    BadToken {
        line: usize,
        token: String,
        radix: &'static str,
    },
    #[error("expected exactly 256 values, found {found}")]
    WrongCount { found: usize },
}

fn parse_token(token: &str, radix: Radix) -> Option<u8> {
    match radix {
        Radix::Decimal => token.parse().ok(),
        Radix::Hex => {
            let digits = token
                .strip_prefix("0x")
                .or_else(|| token.strip_prefix("0X"))
                .unwrap_or(token);
            u8::from_str_radix(digits, 16).ok()
        }
    }
}

pub fn parse_grid(text: &str, radix: Radix) -> Result<SBox, GridParseError> {
    let radix_name = match radix {
        Radix::Decimal => "decimal",
        Radix::Hex => "hex",
    };
    let mut values = Vec::with_capacity(256);
    for (idx, line) in text.lines().enumerate() {
        if line.trim_start().starts_with('#') {
            continue;
        }
        for token in line.split_whitespace() {
            let value = parse_token(token, radix).ok_or_else(|| GridParseError::BadToken {
                line: idx + 1,
                token: token.to_owned(),
                radix: radix_name,
            })?;
            if values.len() == 256 {
                return Err(GridParseError::WrongCount { found: 257 });
            }
            values.push(value);
        }
    }
    SBox::from_slice(&values).ok_or(GridParseError::WrongCount {
        found: values.len(),
    })
}

pub fn write_grid(s: &SBox, radix: Radix) -> String {
    let mut out = String::with_capacity(1024);
    for row in s.table().chunks(16) {
        let mut first = true;
        for &v in row {
            if !first {
                out.push(' ');
            }
            first = false;
            match radix {
                Radix::Decimal => out.push_str(&v.to_string()),
                Radix::Hex => out.push_str(&format!("{v:02x}")),
            }
        }
        out.push('\n');
    }
    out
}
