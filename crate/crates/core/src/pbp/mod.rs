//! Width-5 permutation branching programs.
//!
//! Circuits compile to programs with Barrington's construction; programs
//! split into alternating Alice/Bob layers, which translate into games with
//! five pipes per layer plus four exit pipes.

mod barrington;
mod circuit;
mod layered;
mod perm;
mod program;

use thiserror::Error;

pub use barrington::{compile_circuit, compile_circuit_to, default_output, mu1, mu2};
pub use circuit::{parse_netlist, Circuit, Gate, Wire};
pub use layered::{alternate, program_to_game, AlternatingProgram, Layer};
pub use perm::Permutation;
pub use program::{conjugate_output, negate_program, Instruction, Program};

#[derive(Debug, Error)]
pub enum PbpError {
    #[error("not a permutation of 1..5: {0}")]
    NotAPermutation(String),
    #[error("{0} is not a five-cycle")]
    NotFiveCycle(Permutation),
    #[error("program is empty")]
    EmptyProgram,
    #[error("instruction index {index} outside 1..={input_len}")]
    IndexOutOfRange { index: usize, input_len: usize },
    #[error("input has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("input length {0} is too long")]
    InputTooLong(usize),
    #[error("bad wire {0}")]
    BadWire(String),
    #[error("not an alternating program: {0}")]
    NotAlternating(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
