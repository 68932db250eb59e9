use std::collections::VecDeque;
use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use num_complex::Complex64 as C;
use rand::{Rng, RngCore};

use super::pauli::Pauli;
use super::state::StateVector;
use super::QuantumError;

/// Outcome `z = z₁z₂` of a Bell measurement, naming the Bell state
/// `β_z`: `β₀₀ = (|00⟩+|11⟩)/√2`, `β₀₁ = (|01⟩+|10⟩)/√2`,
/// `β₁₀ = (|00⟩−|11⟩)/√2`, `β₁₁ = (|01⟩−|10⟩)/√2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BellOutcome(u8);

impl BellOutcome {
    pub const ALL: [BellOutcome; 4] = [BellOutcome(0), BellOutcome(1), BellOutcome(2), BellOutcome(3)];

    pub fn new(z1: bool, z2: bool) -> Self {
        BellOutcome((z1 as u8) << 1 | z2 as u8)
    }

    pub fn from_index(i: usize) -> Option<Self> {
        (i < 4).then_some(BellOutcome(i as u8))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// Pauli that undoes a teleportation with this outcome (up to phase):
    /// `00 → I`, `01 → X`, `10 → Z`, `11 → Y`.
    pub fn correction(self) -> Pauli {
        [Pauli::I, Pauli::X, Pauli::Z, Pauli::Y][self.0 as usize]
    }
}

impl fmt::Display for BellOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:02b}", self.0)
    }
}

impl std::str::FromStr for BellOutcome {
    type Err = QuantumError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "00" => Ok(BellOutcome(0)),
            "01" => Ok(BellOutcome(1)),
            "10" => Ok(BellOutcome(2)),
            "11" => Ok(BellOutcome(3)),
            _ => Err(QuantumError::Parse(s.to_string())),
        }
    }
}

/// Chooses measurement outcomes given their probabilities.
pub trait OutcomeSource {
    fn pick(&mut self, probs: &[f64]) -> Result<usize, QuantumError>;
}

impl<S: OutcomeSource + ?Sized> OutcomeSource for &mut S {
    fn pick(&mut self, probs: &[f64]) -> Result<usize, QuantumError> {
        (**self).pick(probs)
    }
}

/// Born-rule sampling from a random source.
pub struct Sampled<R>(pub R);

impl<R: RngCore> OutcomeSource for Sampled<R> {
    fn pick(&mut self, probs: &[f64]) -> Result<usize, QuantumError> {
        let u: f64 = self.0.gen::<f64>() * probs.iter().sum::<f64>();
        let mut acc = 0.0;
        let mut last = 0;
        for (i, &p) in probs.iter().enumerate() {
            if p <= 0.0 {
                continue;
            }
            acc += p;
            last = i;
            if u < acc {
                return Ok(i);
            }
        }
        Ok(last)
    }
}

/// Predetermined outcomes, consumed in order; each must have non-negligible
/// probability.
#[derive(Debug, Clone, Default)]
pub struct Forced(pub VecDeque<usize>);

impl Forced {
    pub fn bell(outcomes: &[BellOutcome]) -> Self {
        Forced(outcomes.iter().map(|o| o.index()).collect())
    }
}

impl OutcomeSource for Forced {
    fn pick(&mut self, probs: &[f64]) -> Result<usize, QuantumError> {
        let i = self.0.pop_front().ok_or(QuantumError::OutcomesExhausted)?;
        if i >= probs.len() || probs[i] < 1e-12 {
            return Err(QuantumError::ImpossibleOutcome(i));
        }
        Ok(i)
    }
}

fn check_pair(state: &StateVector, q1: usize, q2: usize) -> Result<(), QuantumError> {
    state.check_qubit(q1)?;
    state.check_qubit(q2)?;
    if q1 == q2 {
        return Err(QuantumError::SameQubit(q1));
    }
    Ok(())
}

/// Amplitudes of the four Bell components for each assignment of the other
/// qubits; `f(base, [c00, c01, c10, c11])` with `base` the index whose bits
/// `q1`, `q2` are zero.
fn for_each_group(state: &StateVector, q1: usize, q2: usize, mut f: impl FnMut(usize, [C; 4])) {
    let (b1, b2) = (1usize << q1, 1usize << q2);
    let a = state.amplitudes();
    let h = FRAC_1_SQRT_2;
    for base in 0..a.len() {
        if base & (b1 | b2) != 0 {
            continue;
        }
        // a_uv: u = bit q1, v = bit q2
        let (a00, a01, a10, a11) = (a[base], a[base | b2], a[base | b1], a[base | b1 | b2]);
        f(base, [(a00 + a11) * h, (a01 + a10) * h, (a00 - a11) * h, (a01 - a10) * h]);
    }
}

pub fn bell_probabilities(state: &StateVector, q1: usize, q2: usize) -> Result<[f64; 4], QuantumError> {
    check_pair(state, q1, q2)?;
    let mut p = [0.0; 4];
    for_each_group(state, q1, q2, |_, c| {
        for z in 0..4 {
            p[z] += c[z].norm_sqr();
        }
    });
    Ok(p)
}

/// Projective measurement of `(q1, q2)` in the Bell basis. The measured
/// pair is left in `β_z` and the state renormalized.
pub fn bell_measure(
    state: &mut StateVector,
    q1: usize,
    q2: usize,
    source: &mut impl OutcomeSource,
) -> Result<BellOutcome, QuantumError> {
    let probs = bell_probabilities(state, q1, q2)?;
    let z = source.pick(&probs)?;
    let scale = 1.0 / probs[z].sqrt();
    let (b1, b2) = (1usize << q1, 1usize << q2);
    let h = FRAC_1_SQRT_2;
    // β_z components on |u v⟩ = |00⟩, |01⟩, |10⟩, |11⟩
    let beta: [[f64; 4]; 4] = [[h, 0.0, 0.0, h], [0.0, h, h, 0.0], [h, 0.0, 0.0, -h], [0.0, h, -h, 0.0]];
    let mut updates = Vec::with_capacity(state.amplitudes().len() / 4);
    for_each_group(state, q1, q2, |base, c| updates.push((base, c[z] * scale)));
    let amps = state.amplitudes_mut();
    for (base, c) in updates {
        for (uv, idx) in [base, base | b2, base | b1, base | b1 | b2].into_iter().enumerate() {
            amps[idx] = c * beta[z][uv];
        }
    }
    Ok(BellOutcome(z as u8))
}

/// Teleports the state of `src` onto `epr_b`, where `(epr_a, epr_b)` must
/// hold `β₀₀`. Returns the outcome; `epr_b` then holds `P_z|ψ⟩` and
/// applying `outcome.correction()` restores `|ψ⟩`.
pub fn teleport(
    state: &mut StateVector,
    src: usize,
    epr_a: usize,
    epr_b: usize,
    source: &mut impl OutcomeSource,
) -> Result<BellOutcome, QuantumError> {
    check_pair(state, src, epr_a)?;
    check_pair(state, epr_a, epr_b)?;
    check_pair(state, src, epr_b)?;
    let overlap = bell_probabilities(state, epr_a, epr_b)?[0];
    if (overlap - 1.0).abs() > 1e-9 {
        return Err(QuantumError::NotEpr { a: epr_a, b: epr_b, overlap });
    }
    bell_measure(state, src, epr_a, source)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sampled(seed: u64) -> Sampled<ChaCha8Rng> {
        Sampled(ChaCha8Rng::seed_from_u64(seed))
    }

    #[test]
    fn bell_state_is_an_eigenstate() {
        let base = StateVector::zero(0).unwrap();
        let s = StateVector::with_epr_pairs(&base, &[(0, 1)]).unwrap();
        let p = bell_probabilities(&s, 0, 1).unwrap();
        assert!((p[0] - 1.0).abs() < 1e-12);
        let mut s2 = s.clone();
        assert_eq!(bell_measure(&mut s2, 0, 1, &mut sampled(3)).unwrap(), BellOutcome(0));
    }

    #[test]
    fn product_zero_zero_splits_between_00_and_10() {
        let s = StateVector::zero(2).unwrap();
        let p = bell_probabilities(&s, 0, 1).unwrap();
        assert!((p[0] - 0.5).abs() < 1e-12 && (p[2] - 0.5).abs() < 1e-12);
        assert!(p[1].abs() < 1e-12 && p[3].abs() < 1e-12);
    }

    #[test]
    fn probabilities_are_complete_on_random_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let amps: Vec<C> = (0..8).map(|_| C::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)).collect();
            let n = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            let s = StateVector::from_amplitudes(amps.into_iter().map(|a| a / n).collect()).unwrap();
            let p = bell_probabilities(&s, 2, 0).unwrap();
            assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            let mut t = s.clone();
            let z = bell_measure(&mut t, 2, 0, &mut sampled(1)).unwrap();
            assert!((t.norm_sqr() - 1.0).abs() < 1e-10);
            assert!((bell_probabilities(&t, 2, 0).unwrap()[z.index()] - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn teleportation_with_every_forced_outcome() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let psi = StateVector::random_qubit(&mut rng);
            for z in BellOutcome::ALL {
                let mut s = StateVector::with_epr_pairs(&psi, &[(1, 2)]).unwrap();
                let got = teleport(&mut s, 0, 1, 2, &mut Forced::bell(&[z])).unwrap();
                assert_eq!(got, z);
                s.apply_pauli(2, z.correction()).unwrap();
                assert!((s.qubit_fidelity(2, &psi).unwrap() - 1.0).abs() < 1e-10, "z={z}");
            }
        }
    }

    #[test]
    fn zero_outcome_needs_no_correction_and_01_needs_x() {
        let psi = StateVector::qubit(C::new(0.6, 0.0), C::new(0.0, 0.8)).unwrap();
        let mut s = StateVector::with_epr_pairs(&psi, &[(1, 2)]).unwrap();
        teleport(&mut s, 0, 1, 2, &mut Forced::bell(&[BellOutcome::new(false, false)])).unwrap();
        assert!((s.qubit_fidelity(2, &psi).unwrap() - 1.0).abs() < 1e-10);
        let mut s = StateVector::with_epr_pairs(&psi, &[(1, 2)]).unwrap();
        teleport(&mut s, 0, 1, 2, &mut Forced::bell(&["01".parse().unwrap()])).unwrap();
        assert!(s.qubit_fidelity(2, &psi).unwrap() < 0.9);
        s.apply_pauli(2, Pauli::X).unwrap();
        assert!((s.qubit_fidelity(2, &psi).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn errors() {
        let psi = StateVector::zero(1).unwrap();
        let mut s = StateVector::with_epr_pairs(&psi, &[(1, 2)]).unwrap();
        assert!(matches!(bell_measure(&mut s, 1, 1, &mut sampled(0)), Err(QuantumError::SameQubit(1))));
        assert!(bell_measure(&mut s, 0, 7, &mut sampled(0)).is_err());
        // (0, 1) is not an EPR pair
        assert!(matches!(teleport(&mut s, 2, 0, 1, &mut sampled(0)), Err(QuantumError::NotEpr { .. })));
        assert!(matches!(bell_measure(&mut s, 0, 1, &mut Forced::default()), Err(QuantumError::OutcomesExhausted)));
    }
}
