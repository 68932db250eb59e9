//! Space-bounded Turing machines with a read-only input tape `<x y>`, the
//! compiler from reversible input-oblivious machines to garden-hose games,
//! and the converse: evaluating a game from encoded connection lists with a
//! few pointers.

mod analysis;
mod compile;
mod encoded;
mod exec;
mod machine;
mod samples;

use thiserror::Error;

use crate::ghcore::{GameError, Side};

pub use analysis::{
    check_reversible_oblivious, crossing_sets, crossings, CheckReport, Collision, CrossingSets, HeadDivergence,
    MAX_CHECK_N,
};
pub use compile::{compile_tm, CompiledTm, PipeLayout};
pub use encoded::{bits_to_text, encode_inputs, encode_matching, eval_encoded, text_to_bits, MAX_WIDTH};
pub use exec::{run, step, trace, Configuration, InputTape, Outcome, Trace};
pub use machine::{parse_tm, write_tm, Move, Rule, TmSpec, DEFAULT_BUDGET};
pub use samples::{always_accept, branching, equality, merging, parity, sample, zigzag_parity, SAMPLE_NAMES};

#[derive(Debug, Error)]
pub enum TmError {
    #[error("no halt within {budget} steps")]
    BudgetExceeded { budget: usize },
    /// `tape` 0 is the input tape, `k ≥ 1` work tape `k`.
    #[error("head of tape {tape} leaves its bounds at position {pos}")]
    SpaceViolation { tape: usize, pos: usize },
    #[error("no rule for state {state} reading {input:?} and {work:?}")]
    NoTransition { state: String, input: char, work: String },
    #[error("input value out of range for n={n}")]
    InputOutOfRange { n: usize },
    #[error("exhaustive analysis for n={n} exceeds the cap {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("{side} would wire two segments into pipe {pipe} on input {input}; the machine is not reversible")]
    WiringCollision { side: Side, input: u64, pipe: u32 },
    #[error("malformed encoding: {0}")]
    Malformed(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Game(#[from] GameError),
}
