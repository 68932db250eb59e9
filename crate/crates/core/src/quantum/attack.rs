//! Teleportation attacks derived from garden-hose games.
//!
//! The players share one EPR pair per pipe: Alice holds `a_i`, Bob `b_i`.
//! Wherever a player connects two pipe ends with a hose they Bell-measure
//! the two corresponding qubits (the tap being the input qubit), all at
//! once and without communicating. The input ends up on the qubit at the
//! end of the water path, up to a Pauli that both players can compute
//! after exchanging their outcomes.

use crate::ghcore::{flow, validate_game, GameError, GardenHoseGame, Hop, Side, WaterPath};

use super::bell::{bell_measure, BellOutcome, OutcomeSource};
use super::pauli::{Pauli, PauliString};
use super::state::{conjugate, fidelity, StateVector, MAX_QUBITS};
use super::QuantumError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameResult {
    pub side: Side,
    /// `P_{z_k} ⋯ P_{z_1}` with exact phase; the exit qubit holds this
    /// operator applied to the input.
    pub correction: PauliString,
    pub path: WaterPath,
}

/// Product of the per-hop Paulis, later hops on the left.
pub fn frame_product(outcomes: &[BellOutcome]) -> PauliString {
    outcomes
        .iter()
        .fold(PauliString::identity(1), |acc, z| &PauliString::single(z.correction()) * &acc)
}

/// Symbolic version of the attack: follows the input along the water path
/// of `(x, y)`, consuming one outcome per hose on the path.
pub fn pauli_frame_attack(
    game: &GardenHoseGame,
    x: u64,
    y: u64,
    outcomes: &[BellOutcome],
) -> Result<FrameResult, QuantumError> {
    let path = flow(game, x, y)?;
    let hops = path.hops().len();
    if outcomes.len() < hops {
        return Err(QuantumError::ShortOutcomes { needed: hops, got: outcomes.len() });
    }
    Ok(FrameResult { side: path.terminal_side, correction: frame_product(&outcomes[..hops]), path })
}

/// Qubit numbering: input at 0, then `extra` reference qubits, then
/// `a_i`, `b_i` for pipe `i`.
#[derive(Debug, Clone, Copy)]
struct Layout {
    extra: usize,
}

impl Layout {
    fn end(&self, v: u32, side: Side) -> usize {
        if v == 0 {
            return 0;
        }
        let base = self.extra + 2 * v as usize - 1;
        match side {
            Side::Alice => base,
            Side::Bob => base + 1,
        }
    }
}

/// Result of routing a register through the game.
#[derive(Debug, Clone)]
pub struct Routed {
    pub state: StateVector,
    pub side: Side,
    /// Qubit now carrying the (corrected) input.
    pub exit_qubit: usize,
    /// Outcomes of the hoses on the path, in path order.
    pub path_outcomes: Vec<BellOutcome>,
    pub frame: PauliString,
}

/// Runs the attack on a register whose qubit 0 is the input and qubits
/// `1..=extra` are held by someone else (e.g. a verifier). Path hoses are
/// measured first, in path order, then every other hose of both players.
/// The frame correction is applied to the exit qubit unless `correct` is
/// false.
pub(crate) fn route(
    input: &StateVector,
    game: &GardenHoseGame,
    x: u64,
    y: u64,
    source: &mut impl OutcomeSource,
    correct: bool,
) -> Result<Routed, QuantumError> {
    if let Some(v) = validate_game(game).into_iter().next() {
        return Err(QuantumError::Game(GameError::Invalid(v)));
    }
    let layout = Layout { extra: input.num_qubits() - 1 };
    let s = game.size() as usize;
    let needed = input.num_qubits() + 2 * s;
    if needed > MAX_QUBITS {
        return Err(QuantumError::TooManyQubits { needed, cap: MAX_QUBITS });
    }
    let pairs: Vec<(usize, usize)> =
        (1..=s as u32).map(|i| (layout.end(i, Side::Alice), layout.end(i, Side::Bob))).collect();
    let mut state = StateVector::with_epr_pairs(input, &pairs)?;

    let path = flow(game, x, y)?;
    let hops = path.hops();
    let mut path_outcomes = Vec::with_capacity(hops.len());
    for h in &hops {
        let z = bell_measure(&mut state, layout.end(h.from, h.side), layout.end(h.to, h.side), source)?;
        path_outcomes.push(z);
    }
    let on_path = |side: Side, u: u32, v: u32| {
        hops.iter().any(|h: &Hop| h.side == side && ((h.from, h.to) == (u, v) || (h.from, h.to) == (v, u)))
    };
    for (side, m) in [(Side::Alice, game.alice(x)), (Side::Bob, game.bob(y))] {
        for &(u, v) in m.edges() {
            if !on_path(side, u, v) {
                bell_measure(&mut state, layout.end(u, side), layout.end(v, side), source)?;
            }
        }
    }

    let frame = frame_product(&path_outcomes);
    let exit = path.exit();
    let exit_qubit = layout.end(exit.vertex, exit.side);
    if correct {
        frame.apply(&mut state, exit_qubit)?;
    }
    Ok(Routed { state, side: path.terminal_side, exit_qubit, path_outcomes, frame })
}

#[derive(Debug, Clone)]
pub struct AttackResult {
    pub side: Side,
    /// Fidelity of the corrected exit qubit with the input.
    pub fidelity: f64,
    pub path_outcomes: Vec<BellOutcome>,
    /// Correction predicted by the Pauli frame.
    pub frame: PauliString,
    /// The Pauli that, applied to the uncorrected exit qubit, restores the
    /// input, read off the simulated state (`None` if none does).
    pub extracted: Option<Pauli>,
    pub qubits: usize,
}

/// Dense simulation of the attack on `1 + 2s` qubits.
pub fn statevector_attack(
    game: &GardenHoseGame,
    x: u64,
    y: u64,
    psi: &StateVector,
    source: &mut impl OutcomeSource,
) -> Result<AttackResult, QuantumError> {
    if psi.num_qubits() != 1 {
        return Err(QuantumError::Dimension(psi.amplitudes().len()));
    }
    let r = route(psi, game, x, y, source, false)?;
    let rho = r.state.reduced_qubit(r.exit_qubit)?;
    let extracted = Pauli::ALL.into_iter().find(|&p| (fidelity(&conjugate(&rho, p), psi) - 1.0).abs() < 1e-9);
    let corrected = conjugate(&rho, r.frame.letters()[0]);
    Ok(AttackResult {
        side: r.side,
        fidelity: fidelity(&corrected, psi),
        path_outcomes: r.path_outcomes,
        frame: r.frame,
        extracted,
        qubits: r.state.num_qubits(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::bell::{Forced, Sampled};
    use crate::strategies::{build_eq, build_xor};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn all_zero_outcomes_give_identity() {
        let g = build_xor();
        for (x, y) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let f = pauli_frame_attack(&g, x, y, &[BellOutcome::ALL[0]; 8]).unwrap();
            assert!(f.correction.is_identity());
            assert_eq!(f.side, flow(&g, x, y).unwrap().terminal_side);
        }
    }

    #[test]
    fn xor_single_hop_with_outcome_01() {
        let g = build_xor();
        let path = flow(&g, 1, 0).unwrap();
        assert_eq!(path.hops().len(), 1);
        let f = pauli_frame_attack(&g, 1, 0, &["01".parse().unwrap()]).unwrap();
        assert_eq!(f.side, Side::Bob);
        assert!(f.correction.same_up_to_phase(&PauliString::single(Pauli::X)));
    }

    #[test]
    fn short_outcome_lists_are_rejected() {
        let g = build_eq(1).unwrap();
        let hops = flow(&g, 0, 0).unwrap().hops().len();
        assert!(hops > 1);
        assert!(matches!(
            pauli_frame_attack(&g, 0, 0, &vec![BellOutcome::ALL[0]; hops - 1]),
            Err(QuantumError::ShortOutcomes { .. })
        ));
    }

    #[test]
    fn statevector_matches_frame_on_eq1() {
        let g = build_eq(1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for x in 0..2 {
            for y in 0..2 {
                let psi = StateVector::random_qubit(&mut rng);
                let r = statevector_attack(&g, x, y, &psi, &mut Sampled(&mut rng)).unwrap();
                assert_eq!(r.qubits, 9);
                assert!((r.fidelity - 1.0).abs() < 1e-10);
                assert_eq!(r.side, Side::from_bit(x == y));
                assert_eq!(r.extracted, Some(r.frame.letters()[0]));
                let f = pauli_frame_attack(&g, x, y, &r.path_outcomes).unwrap();
                assert_eq!(f.correction, r.frame);
            }
        }
    }

    #[test]
    fn forced_outcomes_drive_both_backends() {
        let g = build_xor();
        let psi = StateVector::random_qubit(&mut ChaCha8Rng::seed_from_u64(2));
        for z in BellOutcome::ALL {
            let forced = [z; 7];
            let r = statevector_attack(&g, 1, 1, &psi, &mut Forced::bell(&forced)).unwrap();
            let f = pauli_frame_attack(&g, 1, 1, &forced).unwrap();
            assert_eq!(r.extracted, Some(f.correction.letters()[0]));
            assert!((r.fidelity - 1.0).abs() < 1e-10);
        }
    }
}
