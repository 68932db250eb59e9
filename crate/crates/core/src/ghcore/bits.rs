//! Fixed-length bitstrings.
//!
//! Inputs are carried around as a `u64` plus a length. Strings are written
//! MSB-first and bit index 1 is the leftmost character, so the numeric order
//! of the values coincides with lexicographic order of the strings.

use std::fmt;

use super::GameError;

/// Largest per-player input length the crate works with.
pub const MAX_BITS: usize = 32;

/// A bitstring of known length, stored MSB-first in the low `len` bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bits {
    pub value: u64,
    pub len: usize,
}

impl Bits {
    pub fn new(value: u64, len: usize) -> Self {
        debug_assert!(len <= 64 && (len == 64 || value >> len == 0));
        Bits { value, len }
    }

    pub fn zeros(len: usize) -> Self {
        Bits { value: 0, len }
    }

    /// Bit at 1-based index `i` (1 is the leftmost character).
    pub fn get(&self, i: usize) -> bool {
        bit(self.value, self.len, i)
    }

    pub fn count_ones(&self) -> u32 {
        self.value.count_ones()
    }

    /// Iterates over all 2^len strings in lexicographic order.
    pub fn all(len: usize) -> impl Iterator<Item = Bits> {
        (0..1u64 << len).map(move |v| Bits::new(v, len))
    }

    /// Concatenation `self ‖ other`.
    pub fn concat(&self, other: &Bits) -> Bits {
        Bits::new((self.value << other.len) | other.value, self.len + other.len)
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&to_string(self.value, self.len))
    }
}

impl std::str::FromStr for Bits {
    type Err = GameError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.len() > 64 {
            return Err(GameError::BadBits(s.to_string()));
        }
        let mut value = 0u64;
        for c in s.chars() {
            value = match c {
                '0' => value << 1,
                '1' => (value << 1) | 1,
                _ => return Err(GameError::BadBits(s.to_string())),
            };
        }
        Ok(Bits::new(value, s.len()))
    }
}

/// Bit at 1-based MSB-first index `i` of a `len`-bit value.
#[inline]
pub fn bit(value: u64, len: usize, i: usize) -> bool {
    debug_assert!(i >= 1 && i <= len);
    (value >> (len - i)) & 1 == 1
}

pub fn to_string(value: u64, len: usize) -> String {
    (1..=len)
        .map(|i| if bit(value, len, i) { '1' } else { '0' })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn msb_first_indexing() {
        let b: Bits = "100".parse().unwrap();
        assert_eq!(b.value, 4);
        assert!(b.get(1));
        assert!(!b.get(3));
        assert_eq!(b.to_string(), "100");
    }

    #[test]
    fn lexicographic_order_matches_numeric() {
        let mut strings: Vec<String> = Bits::all(3).map(|b| b.to_string()).collect();
        let sorted = {
            let mut s = strings.clone();
            s.sort();
            s
        };
        assert_eq!(strings, sorted);
        strings.dedup();
        assert_eq!(strings.len(), 8);
    }

    #[test]
    fn rejects_non_binary() {
        assert!("01a".parse::<Bits>().is_err());
    }

    #[test]
    fn concat_puts_left_operand_first() {
        let x: Bits = "10".parse().unwrap();
        let y: Bits = "01".parse().unwrap();
        assert_eq!(x.concat(&y).to_string(), "1001");
    }
}
