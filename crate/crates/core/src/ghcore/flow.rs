use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::bits::Bits;
use super::function::BooleanFunction;
use super::game::{validate_game, GardenHoseGame};
use super::matching::{Side, NONE};
use super::GameError;

/// A vertex of `G(x, y)`: a pipe end (or the tap) on one side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Endpoint {
    pub vertex: u32,
    pub side: Side,
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.vertex == 0 {
            f.write_str("tap")
        } else {
            write!(f, "{}{}", self.vertex, self.side)
        }
    }
}

/// A hose connection the water runs through.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Hop {
    pub side: Side,
    pub from: u32,
    pub to: u32,
}

/// The maximal path from the tap.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WaterPath {
    pub vertices: Vec<Endpoint>,
    pub terminal_side: Side,
}

impl WaterPath {
    pub fn exit(&self) -> Endpoint {
        *self.vertices.last().expect("path always contains the tap")
    }

    /// Hose connections in the order the water traverses them.
    ///
    /// Consecutive path entries on the same side are joined by a hose;
    /// entries on opposite sides are joined by a pipe.
    pub fn hops(&self) -> Vec<Hop> {
        self.vertices
            .windows(2)
            .filter(|w| w[0].side == w[1].side)
            .map(|w| Hop { side: w[0].side, from: w[0].vertex, to: w[1].vertex })
            .collect()
    }

    /// Pipes traversed, in order.
    pub fn pipes(&self) -> Vec<u32> {
        self.vertices
            .windows(2)
            .filter(|w| w[0].side != w[1].side)
            .map(|w| w[0].vertex)
            .collect()
    }
}

impl fmt::Display for WaterPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, " => {}", self.terminal_side)
    }
}

/// Walks the unique maximal path given partner tables for both sides.
///
/// `alice[v]` is Alice's partner of vertex `v` (`0..=s`), `bob[v]` Bob's.
/// Calls `visit` on every vertex and returns the terminal side. Both tables
/// must encode valid matchings; then every vertex has degree at most two and
/// the walk visits each endpoint at most once.
#[inline]
pub(crate) fn walk(alice: &[u32], bob: &[u32], mut visit: impl FnMut(Endpoint)) -> Side {
    visit(Endpoint { vertex: 0, side: Side::Alice });
    let mut v = alice[0];
    if v == NONE {
        return Side::Alice;
    }
    loop {
        // entering pipe v at Alice's end, leaving at Bob's
        visit(Endpoint { vertex: v, side: Side::Alice });
        visit(Endpoint { vertex: v, side: Side::Bob });
        let w = bob[v as usize];
        if w == NONE {
            return Side::Bob;
        }
        visit(Endpoint { vertex: w, side: Side::Bob });
        visit(Endpoint { vertex: w, side: Side::Alice });
        let u = alice[w as usize];
        if u == NONE {
            return Side::Alice;
        }
        v = u;
    }
}

fn check_input(game: &GardenHoseGame, x: u64, y: u64) -> Result<(), GameError> {
    let lim = 1u64 << game.n();
    if x >= lim || y >= lim {
        return Err(GameError::InputOutOfRange { n: game.n() });
    }
    Ok(())
}

fn partner_tables(game: &GardenHoseGame, x: u64, y: u64) -> Result<(Vec<u32>, Vec<u32>), GameError> {
    check_input(game, x, y)?;
    if let Some(fault) = game.alice_faults(x).into_iter().next() {
        return Err(GameError::Invalid(super::game::Violation { side: Side::Alice, input: x, fault }));
    }
    if let Some(fault) = game.bob_faults(y).into_iter().next() {
        return Err(GameError::Invalid(super::game::Violation { side: Side::Bob, input: y, fault }));
    }
    Ok((game.alice(x).partners(game.size()), game.bob(y).partners(game.size())))
}

/// Evaluates the game on `(x, y)`, returning the water path.
pub fn flow(game: &GardenHoseGame, x: u64, y: u64) -> Result<WaterPath, GameError> {
    let (a, b) = partner_tables(game, x, y)?;
    let mut vertices = Vec::new();
    let terminal_side = walk(&a, &b, |e| vertices.push(e));
    Ok(WaterPath { vertices, terminal_side })
}

/// [`flow`] on explicit bitstrings, checking their lengths.
pub fn flow_bits(game: &GardenHoseGame, x: &Bits, y: &Bits) -> Result<WaterPath, GameError> {
    if x.len != game.n() || y.len != game.n() {
        return Err(GameError::LengthMismatch { expected: game.n(), x: x.len, y: y.len });
    }
    flow(game, x.value, y.value)
}

/// Only the exit side, without recording the path.
pub fn exit_side(game: &GardenHoseGame, x: u64, y: u64) -> Result<Side, GameError> {
    let (a, b) = partner_tables(game, x, y)?;
    Ok(walk(&a, &b, |_| {}))
}

/// Outcome of [`computes`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    /// Lexicographically smallest `(x, y)` where the game is wrong.
    pub counterexample: Option<(u64, u64)>,
    pub pairs_checked: u64,
}

/// Checks that the game computes `f` on every input pair.
///
/// Rows are checked in parallel; the reported counterexample is still the
/// lexicographically smallest one.
pub fn computes(game: &GardenHoseGame, f: &BooleanFunction) -> Result<Verdict, GameError> {
    if game.n() != f.n() {
        return Err(GameError::SizeMismatch { game: game.n(), function: f.n() });
    }
    if let Some(v) = validate_game(game).into_iter().next() {
        return Err(GameError::Invalid(v));
    }
    let n = game.n();
    let s = game.size();
    let alice: Vec<Vec<u32>> = (0..1u64 << n).into_par_iter().map(|x| game.alice(x).partners(s)).collect();
    let bob: Vec<Vec<u32>> = (0..1u64 << n).into_par_iter().map(|y| game.bob(y).partners(s)).collect();
    let counterexample = (0..1u64 << n).into_par_iter().find_map_first(|x| {
        let a = &alice[x as usize];
        (0..1u64 << n).find_map(|y| {
            let side = walk(a, &bob[y as usize], |_| {});
            (side.as_bit() != f.value(x, y)).then_some((x, y))
        })
    });
    Ok(Verdict { holds: counterexample.is_none(), counterexample, pairs_checked: 1 << (2 * n) })
}
