//! Garden-hose games and the teleportation attacks they describe.
//!
//! * [`ghcore`]: games, water flow, verification, file format, diagrams.
//! * [`strategies`]: explicit constructions (XOR, EQ, IP, MAJ, generic) and
//!   local pre-processing.
//! * [`pbp`]: width-5 permutation branching programs, Barrington's compiler
//!   and the translation of programs into games.
//! * [`tm`]: reversible, input-oblivious Turing machines compiled into games,
//!   and the pointer-chasing evaluator of encoded games.
//! * [`bounds`]: injectivity, the `s log s ≥ n` and counting bounds, and an
//!   exhaustive search for the exact complexity of tiny functions.
//! * [`quantum`]: statevector and Pauli-frame simulation of teleportation
//!   attacks, the single-qubit routing protocol and the MUB protocol.

pub mod bounds;
pub mod ghcore;
pub mod pbp;
pub mod quantum;
pub mod strategies;
pub mod tm;

pub use ghcore::{BooleanFunction, GameError, GardenHoseGame, Matching, Side, Strategy, WaterPath};
