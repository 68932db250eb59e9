//! Quantum side: dense statevectors, Pauli strings, Bell measurements and
//! teleportation, the attacks that garden-hose games describe, the
//! single-qubit routing protocol and the protocol built on mutually
//! unbiased bases.

mod attack;
mod bell;
mod mub;
mod pauli;
mod pvqubit;
mod state;

use thiserror::Error;

use crate::ghcore::GameError;

pub use attack::{frame_product, pauli_frame_attack, statevector_attack, AttackResult, FrameResult};
pub use bell::{bell_measure, bell_probabilities, teleport, BellOutcome, Forced, OutcomeSource, Sampled};
pub use mub::{build_mub, mub_permute, mub_permute_symplectic, pv_mub_attack, MubAttack, MubFamily, MAX_MUB_N};
pub use pauli::{Pauli, PauliString};
pub use pvqubit::{
    acceptance_rate, pv_qubit_round, Cheat, CheckMode, Delivery, NaiveMeasure, RoundVerdict, TeleportCheat,
};
pub use state::{conjugate, fidelity, Matrix2, StateVector, MAX_QUBITS, NORM_TOLERANCE};

#[derive(Debug, Error)]
pub enum QuantumError {
    #[error("{needed} qubits needed, at most {cap} are simulated")]
    TooManyQubits { needed: usize, cap: usize },
    #[error("{what} supports n ≤ {cap}, got n={n}")]
    TooLarge { what: &'static str, n: usize, cap: usize },
    #[error("amplitude vector of length {0} is not a power of two (or has the wrong size)")]
    Dimension(usize),
    #[error("state has squared norm {0}, expected 1")]
    NotNormalized(f64),
    #[error("qubit {0} is out of range")]
    InvalidQubit(usize),
    #[error("cannot measure qubit {0} jointly with itself")]
    SameQubit(usize),
    #[error("outcome {0} has probability zero")]
    ImpossibleOutcome(usize),
    #[error("forced outcome list exhausted")]
    OutcomesExhausted,
    #[error("qubits {a} and {b} are not an EPR pair (overlap {overlap})")]
    NotEpr { a: usize, b: usize, overlap: f64 },
    #[error("{needed} Bell outcomes needed, {got} given")]
    ShortOutcomes { needed: usize, got: usize },
    #[error("no basis vector matches vector {x} of basis {a}")]
    NoMatch { a: usize, x: usize },
    #[error("index out of range: {0}")]
    Index(String),
    #[error("cannot parse {0:?}")]
    Parse(String),
    #[error(transparent)]
    Game(#[from] GameError),
}
