//! Garden-hose games: data model, water-flow evaluation, brute-force
//! verification against a Boolean function, the text file format and
//! diagram rendering.

mod bits;
mod dot;
mod flow;
mod format;
mod function;
mod game;
mod matching;

use thiserror::Error;

pub use bits::{bit, to_string as bits_to_string, Bits, MAX_BITS};
pub use dot::render_diagram;
pub use flow::{computes, exit_side, flow, flow_bits, Endpoint, Hop, Verdict, WaterPath};
pub(crate) use flow::walk;
pub use format::{parse_game, write_game};
pub use function::{BooleanFunction, SingleInputFunction, MAX_TABLE_BITS};
pub use game::{validate_game, GardenHoseGame, Strategy, Violation};
pub use matching::{Matching, MatchingFault, Side, NONE};

#[derive(Debug, Error)]
pub enum GameError {
    #[error("invalid game: {0}")]
    Invalid(Violation),
    #[error("inputs must have length {expected}, got x: {x}, y: {y}")]
    LengthMismatch { expected: usize, x: usize, y: usize },
    #[error("input value out of range for n={n}")]
    InputOutOfRange { n: usize },
    #[error("game is on {game}-bit inputs but the function on {function}-bit inputs")]
    SizeMismatch { game: usize, function: usize },
    #[error("{side} strategy table has {got} entries, expected {expected}")]
    TableSize { side: Side, expected: usize, got: usize },
    #[error("input length {0} exceeds the supported maximum")]
    InputTooLong(usize),
    #[error("{what} with n={n} exceeds the cap {cap}")]
    TooLarge { what: &'static str, n: usize, cap: usize },
    #[error("not a bitstring: {0:?}")]
    BadBits(String),
    #[error("unknown function {0:?}")]
    UnknownFunction(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Precondition(String),
}
