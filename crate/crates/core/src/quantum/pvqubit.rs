//! One round of the single-qubit routing protocol, as synchronous messages.
//!
//! The verifiers prepare `β₀₀` on `(Q, R)` = qubits `(0, 1)`, send `Q` to
//! the prover together with `x` (from one side) and `y` (from the other),
//! and keep `R`. The prover must return `Q` to the verifier on side
//! `f(x, y)`, who then tests the joint state of the returned qubit and `R`.

use rand::{Rng, RngCore};

use crate::ghcore::{BooleanFunction, GardenHoseGame, Side};

use super::attack::route;
use super::bell::{bell_probabilities, Sampled};
use super::pauli::{Pauli, PauliString};
use super::state::StateVector;
use super::QuantumError;

const Q: usize = 0;
const R: usize = 1;

/// How the receiving verifier tests `(received, R)` against `β₀₀`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CheckMode {
    /// Measure `ZZ` or `XX` (chosen uniformly) and accept on `+1`. Both
    /// stabilize `β₀₀`; a computational-basis state passes with
    /// probability 3/4.
    #[default]
    RandomStabilizer,
    /// Bell measurement, accept on outcome `00`.
    BellProjection,
}

/// What a (dishonest) prover hands back: the register, the side it went to
/// and which qubit is offered to the verifier there.
pub struct Delivery {
    pub state: StateVector,
    pub side: Side,
    pub qubit: usize,
}

/// A prover strategy replacing the honest one. It receives the full
/// register but may only act on qubit `Q` and its own qubits.
pub trait Cheat {
    fn deliver(&self, state: StateVector, x: u64, y: u64, rng: &mut dyn RngCore) -> Result<Delivery, QuantumError>;
}

/// Two provers running the teleportation attack of a game.
pub struct TeleportCheat<'a> {
    pub game: &'a GardenHoseGame,
}

impl Cheat for TeleportCheat<'_> {
    fn deliver(&self, state: StateVector, x: u64, y: u64, rng: &mut dyn RngCore) -> Result<Delivery, QuantumError> {
        let r = route(&state, self.game, x, y, &mut Sampled(rng), true)?;
        Ok(Delivery { state: r.state, side: r.side, qubit: r.exit_qubit })
    }
}

/// Measures `Q` in the computational basis, then sends the collapsed qubit
/// to the correct side.
pub struct NaiveMeasure<'a> {
    pub f: &'a BooleanFunction,
}

impl Cheat for NaiveMeasure<'_> {
    fn deliver(&self, mut state: StateVector, x: u64, y: u64, rng: &mut dyn RngCore) -> Result<Delivery, QuantumError> {
        let p1 = state.probability_one(Q)?;
        let b = rng.gen::<f64>() < p1;
        state.collapse(Q, b)?;
        Ok(Delivery { state, side: Side::from_bit(self.f.value(x, y)), qubit: Q })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RoundVerdict {
    pub accepted: bool,
    pub expected: Side,
    pub delivered: Side,
}

fn expectation(state: &StateVector, p: &PauliString, qubits: [usize; 2]) -> Result<f64, QuantumError> {
    let mut t = state.clone();
    for (&q, &l) in qubits.iter().zip(p.letters()) {
        t.apply_pauli(q, l)?;
    }
    Ok(state.inner(&t).re)
}

fn acceptance_probability(d: &Delivery, mode: CheckMode, rng: &mut dyn RngCore) -> Result<f64, QuantumError> {
    match mode {
        CheckMode::BellProjection => Ok(bell_probabilities(&d.state, d.qubit, R)?[0]),
        CheckMode::RandomStabilizer => {
            let p = if rng.gen::<bool>() { Pauli::Z } else { Pauli::X };
            let e = expectation(&d.state, &PauliString::new(vec![p, p]), [d.qubit, R])?;
            Ok((1.0 + e) / 2.0)
        }
    }
}

/// Plays one round; `cheat = None` is the honest prover.
pub fn pv_qubit_round(
    f: &BooleanFunction,
    x: u64,
    y: u64,
    cheat: Option<&dyn Cheat>,
    mode: CheckMode,
    rng: &mut dyn RngCore,
) -> Result<RoundVerdict, QuantumError> {
    let expected = Side::from_bit(f.value(x, y));
    let epr = StateVector::with_epr_pairs(&StateVector::zero(0)?, &[(Q, R)])?;
    let d = match cheat {
        None => Delivery { state: epr, side: expected, qubit: Q },
        Some(c) => c.deliver(epr, x, y, rng)?,
    };
    if d.qubit == R {
        return Err(QuantumError::InvalidQubit(R));
    }
    let accepted = d.side == expected && {
        let p = acceptance_probability(&d, mode, rng)?;
        rng.gen::<f64>() < p
    };
    Ok(RoundVerdict { accepted, expected, delivered: d.side })
}

/// Fraction of `trials` rounds accepted, with uniformly random inputs.
pub fn acceptance_rate(
    f: &BooleanFunction,
    cheat: Option<&dyn Cheat>,
    mode: CheckMode,
    trials: usize,
    rng: &mut dyn RngCore,
) -> Result<f64, QuantumError> {
    let side = 1u64 << f.n();
    let mut accepted = 0;
    for _ in 0..trials {
        let (x, y) = (rng.gen_range(0..side), rng.gen_range(0..side));
        accepted += pv_qubit_round(f, x, y, cheat, mode, rng)?.accepted as usize;
    }
    Ok(accepted as f64 / trials as f64)
}
