//! Connection lists as bitstrings, and an evaluator that follows the water
//! using a constant number of pointers into the two descriptions.
//!
//! Layout: 6 bits holding the width `w`, then the pair count in `w` bits,
//! then each pair as two `w`-bit vertices. All numbers MSB-first; the tap
//! is vertex 0.

use crate::ghcore::{GardenHoseGame, Matching};

use super::TmError;

const WIDTH_BITS: usize = 6;
pub const MAX_WIDTH: usize = 32;

fn bits_needed(v: u64) -> usize {
    (64 - v.leading_zeros() as usize).max(1)
}

fn push_number(out: &mut Vec<bool>, v: u64, w: usize) {
    out.extend((0..w).rev().map(|i| v >> i & 1 == 1));
}

pub fn encode_matching(m: &Matching) -> Vec<bool> {
    let largest = m.edges().iter().map(|&(_, v)| v as u64).max().unwrap_or(0);
    let w = bits_needed(largest.max(m.len() as u64));
    let mut out = Vec::with_capacity(WIDTH_BITS + w * (1 + 2 * m.len()));
    push_number(&mut out, w as u64, WIDTH_BITS);
    push_number(&mut out, m.len() as u64, w);
    for &(u, v) in m.edges() {
        push_number(&mut out, u as u64, w);
        push_number(&mut out, v as u64, w);
    }
    out
}

/// `(α(x), β(y))` for a game.
pub fn encode_inputs(game: &GardenHoseGame, x: u64, y: u64) -> (Vec<bool>, Vec<bool>) {
    (encode_matching(&game.alice(x)), encode_matching(&game.bob(y)))
}

pub fn bits_to_text(b: &[bool]) -> String {
    b.iter().map(|&v| if v { '1' } else { '0' }).collect()
}

pub fn text_to_bits(s: &str) -> Result<Vec<bool>, TmError> {
    s.trim()
        .chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(TmError::Malformed(format!("not a bit: {c:?}"))),
        })
        .collect()
}

/// A read-only view of one description: width, count and random access to
/// pair `i`. Holds nothing but two numbers and the borrowed input.
struct Desc<'a> {
    bits: &'a [bool],
    width: usize,
    count: usize,
}

impl<'a> Desc<'a> {
    fn read(bits: &[bool], at: usize, w: usize) -> u64 {
        bits[at..at + w].iter().fold(0, |acc, &b| acc << 1 | b as u64)
    }

    fn open(bits: &'a [bool], who: &str) -> Result<Self, TmError> {
        let bad = |msg: String| TmError::Malformed(format!("{who}: {msg}"));
        if bits.len() < WIDTH_BITS {
            return Err(bad("shorter than the width field".into()));
        }
        let width = Self::read(bits, 0, WIDTH_BITS) as usize;
        if width > MAX_WIDTH {
            return Err(bad(format!("width {width} exceeds {MAX_WIDTH}")));
        }
        if bits.len() < WIDTH_BITS + width {
            return Err(bad("missing pair count".into()));
        }
        let count = Self::read(bits, WIDTH_BITS, width) as usize;
        let expected = WIDTH_BITS + width + 2 * width * count;
        if bits.len() != expected {
            return Err(bad(format!("length {} but header implies {expected}", bits.len())));
        }
        Ok(Desc { bits, width, count })
    }

    fn pair(&self, i: usize) -> (u64, u64) {
        let at = WIDTH_BITS + self.width * (1 + 2 * i);
        (Self::read(self.bits, at, self.width), Self::read(self.bits, at + self.width, self.width))
    }

    /// Every vertex at most once, no self-loops, optionally no tap.
    fn validate(&self, who: &str, tap_allowed: bool) -> Result<(), TmError> {
        let bad = |msg: String| TmError::Malformed(format!("{who}: {msg}"));
        for i in 0..self.count {
            let (u, v) = self.pair(i);
            if u == v {
                return Err(bad(format!("self-loop at {u}")));
            }
            if !tap_allowed && (u == 0 || v == 0) {
                return Err(bad("connects the tap".into()));
            }
            for j in i + 1..self.count {
                let (a, b) = self.pair(j);
                if let Some(w) = [u, v].into_iter().find(|&w| w == a || w == b) {
                    return Err(bad(format!("vertex {w} used twice")));
                }
            }
        }
        Ok(())
    }

    fn partner(&self, w: u64) -> Option<u64> {
        (0..self.count).find_map(|i| match self.pair(i) {
            (u, v) if u == w => Some(v),
            (u, v) if v == w => Some(u),
            _ => None,
        })
    }
}

/// `true` iff the water leaves on Bob's side.
///
/// The walk keeps only the current vertex and a loop index; every lookup
/// rescans the relevant list.
pub fn eval_encoded(alice: &[bool], bob: &[bool]) -> Result<bool, TmError> {
    let a = Desc::open(alice, "alice")?;
    let b = Desc::open(bob, "bob")?;
    a.validate("alice", true)?;
    b.validate("bob", false)?;
    // a valid pair of matchings yields a simple path through at most
    // every listed pair once
    let mut v = 0u64;
    for _ in 0..=a.count + b.count {
        let Some(pipe) = a.partner(v) else { return Ok(false) };
        let Some(next) = b.partner(pipe) else { return Ok(true) };
        v = next;
    }
    Err(TmError::Malformed("path does not terminate".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encoding_layout() {
        let m = Matching::from_edges([(0, 1)]);
        // w = 1: 000001 | 1 | 0 1
        assert_eq!(bits_to_text(&encode_matching(&m)), "000001101");
        assert_eq!(bits_to_text(&encode_matching(&Matching::empty())), "0000010");
    }

    #[test]
    fn empty_alice_list_is_zero() {
        let empty = encode_matching(&Matching::empty());
        let bob = encode_matching(&Matching::from_edges([(1, 2)]));
        assert!(!eval_encoded(&empty, &bob).unwrap());
    }

    #[test]
    fn malformed_inputs() {
        let good = encode_matching(&Matching::from_edges([(0, 1)]));
        assert!(eval_encoded(&good[..5], &good).is_err());
        assert!(eval_encoded(&good, &good).is_err(), "tap in Bob's list");
        let loops = encode_matching(&Matching::from_edges([(2, 2)]));
        assert!(eval_encoded(&loops, &encode_matching(&Matching::empty())).is_err());
        let twice = encode_matching(&Matching::from_edges([(0, 1), (1, 2)]));
        assert!(eval_encoded(&twice, &encode_matching(&Matching::empty())).is_err());
        assert!(text_to_bits("01x").is_err());
    }
}
