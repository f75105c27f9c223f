//! Helpers for binary strings written as `'0'`/`'1'` text.

use crate::error::{Error, Result};

pub fn is_binary(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b == b'0' || b == b'1')
}

pub fn check(s: &str) -> Result<()> {
    if is_binary(s) {
        Ok(())
    } else {
        Err(Error::InvalidString(s.to_string()))
    }
}

/// Bitwise complement.
pub fn complement(s: &str) -> String {
    s.chars()
        .map(|c| if c == '0' { '1' } else { '0' })
        .collect()
}

pub fn reverse(s: &str) -> String {
    s.chars().rev().collect()
}

/// Canonical record order: shorter first, then lexicographic.
pub fn length_lex(a: &str, b: &str) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

pub fn from_bits(bits: &[u8]) -> String {
    bits.iter()
        .map(|&b| if b == 0 { '0' } else { '1' })
        .collect()
}

/// All binary strings of length `len` in lexicographic order.
pub fn all_of_length(len: usize) -> impl Iterator<Item = String> {
    (0u64..1 << len).map(move |v| format!("{v:0len$b}"))
}
