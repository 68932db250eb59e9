use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64 as C;
use rand::Rng;

use super::pauli::Pauli;
use super::QuantumError;

/// Largest number of qubits a dense state may hold.
pub const MAX_QUBITS: usize = 24;
pub const NORM_TOLERANCE: f64 = 1e-10;

/// `2^k` amplitudes; qubit `q` is bit `q` of the basis-state index.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    k: usize,
    amps: Vec<C>,
}

pub type Matrix2 = [[C; 2]; 2];

impl StateVector {
    /// `|0…0⟩` on `k` qubits.
    pub fn zero(k: usize) -> Result<Self, QuantumError> {
        if k > MAX_QUBITS {
            return Err(QuantumError::TooManyQubits { needed: k, cap: MAX_QUBITS });
        }
        let mut amps = vec![C::new(0.0, 0.0); 1 << k];
        amps[0] = C::new(1.0, 0.0);
        Ok(StateVector { k, amps })
    }

    pub fn from_amplitudes(amps: Vec<C>) -> Result<Self, QuantumError> {
        let len = amps.len();
        if !len.is_power_of_two() {
            return Err(QuantumError::Dimension(len));
        }
        let k = len.trailing_zeros() as usize;
        if k > MAX_QUBITS {
            return Err(QuantumError::TooManyQubits { needed: k, cap: MAX_QUBITS });
        }
        let s = StateVector { k, amps };
        let norm = s.norm_sqr();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(QuantumError::NotNormalized(norm));
        }
        Ok(s)
    }

    /// `α|0⟩ + β|1⟩`, normalized.
    pub fn qubit(alpha: C, beta: C) -> Result<Self, QuantumError> {
        let n = (alpha.norm_sqr() + beta.norm_sqr()).sqrt();
        if n == 0.0 {
            return Err(QuantumError::NotNormalized(0.0));
        }
        Ok(StateVector { k: 1, amps: vec![alpha / n, beta / n] })
    }

    /// A uniformly random point on the Bloch sphere.
    pub fn random_qubit<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let theta = (1.0 - 2.0 * rng.gen::<f64>()).acos();
        let phi = 2.0 * PI * rng.gen::<f64>();
        StateVector {
            k: 1,
            amps: vec![C::new((theta / 2.0).cos(), 0.0), C::from_polar((theta / 2.0).sin(), phi)],
        }
    }

    /// `base` on qubits `0..base.k`, and `|β₀₀⟩` on every listed pair; the
    /// pairs must cover qubits `base.k..k` exactly once.
    pub fn with_epr_pairs(base: &StateVector, pairs: &[(usize, usize)]) -> Result<Self, QuantumError> {
        let k = base.k + 2 * pairs.len();
        if k > MAX_QUBITS {
            return Err(QuantumError::TooManyQubits { needed: k, cap: MAX_QUBITS });
        }
        let mut used = vec![false; k];
        for &(a, b) in pairs {
            for q in [a, b] {
                if q < base.k || q >= k || std::mem::replace(&mut used[q], true) {
                    return Err(QuantumError::InvalidQubit(q));
                }
            }
        }
        let mask = (1usize << base.k) - 1;
        let scale = FRAC_1_SQRT_2.powi(pairs.len() as i32);
        let amps = (0..1usize << k)
            .map(|i| {
                if pairs.iter().all(|&(a, b)| (i >> a & 1) == (i >> b & 1)) {
                    base.amps[i & mask] * scale
                } else {
                    C::new(0.0, 0.0)
                }
            })
            .collect();
        Ok(StateVector { k, amps })
    }

    pub fn num_qubits(&self) -> usize {
        self.k
    }

    pub fn amplitudes(&self) -> &[C] {
        &self.amps
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [C] {
        &mut self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn inner(&self, other: &StateVector) -> C {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    pub(crate) fn check_qubit(&self, q: usize) -> Result<(), QuantumError> {
        if q < self.k {
            Ok(())
        } else {
            Err(QuantumError::InvalidQubit(q))
        }
    }

    pub fn apply_single(&mut self, q: usize, m: &Matrix2) -> Result<(), QuantumError> {
        self.check_qubit(q)?;
        let bit = 1 << q;
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                let (a0, a1) = (self.amps[i], self.amps[i | bit]);
                self.amps[i] = m[0][0] * a0 + m[0][1] * a1;
                self.amps[i | bit] = m[1][0] * a0 + m[1][1] * a1;
            }
        }
        Ok(())
    }

    pub fn apply_pauli(&mut self, q: usize, p: Pauli) -> Result<(), QuantumError> {
        if p == Pauli::I {
            return self.check_qubit(q);
        }
        self.apply_single(q, &p.matrix())
    }

    pub fn apply_h(&mut self, q: usize) -> Result<(), QuantumError> {
        let h = C::new(FRAC_1_SQRT_2, 0.0);
        self.apply_single(q, &[[h, h], [h, -h]])
    }

    /// Reduced density matrix of one qubit.
    pub fn reduced_qubit(&self, q: usize) -> Result<Matrix2, QuantumError> {
        self.check_qubit(q)?;
        let bit = 1 << q;
        let zero = C::new(0.0, 0.0);
        let mut rho = [[zero; 2]; 2];
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                let (a0, a1) = (self.amps[i], self.amps[i | bit]);
                rho[0][0] += a0 * a0.conj();
                rho[0][1] += a0 * a1.conj();
                rho[1][0] += a1 * a0.conj();
                rho[1][1] += a1 * a1.conj();
            }
        }
        Ok(rho)
    }

    /// `⟨ψ|ρ_q|ψ⟩` for a one-qubit `psi`.
    pub fn qubit_fidelity(&self, q: usize, psi: &StateVector) -> Result<f64, QuantumError> {
        if psi.k != 1 {
            return Err(QuantumError::Dimension(psi.amps.len()));
        }
        Ok(fidelity(&self.reduced_qubit(q)?, psi))
    }

    /// Probability that qubit `q` reads 1.
    pub fn probability_one(&self, q: usize) -> Result<f64, QuantumError> {
        self.check_qubit(q)?;
        Ok(self.amps.iter().enumerate().filter(|(i, _)| i >> q & 1 == 1).map(|(_, a)| a.norm_sqr()).sum())
    }

    /// Projects qubit `q` onto `|b⟩` and renormalizes.
    pub fn collapse(&mut self, q: usize, b: bool) -> Result<(), QuantumError> {
        self.check_qubit(q)?;
        let p = if b { self.probability_one(q)? } else { 1.0 - self.probability_one(q)? };
        if p <= 0.0 {
            return Err(QuantumError::ImpossibleOutcome(b as usize));
        }
        let s = 1.0 / p.sqrt();
        for (i, a) in self.amps.iter_mut().enumerate() {
            *a = if (i >> q & 1 == 1) == b { *a * s } else { C::new(0.0, 0.0) };
        }
        Ok(())
    }
}

/// `⟨ψ|ρ|ψ⟩`.
pub fn fidelity(rho: &Matrix2, psi: &StateVector) -> f64 {
    let v = psi.amplitudes();
    let mut f = C::new(0.0, 0.0);
    for i in 0..2 {
        for j in 0..2 {
            f += v[i].conj() * rho[i][j] * v[j];
        }
    }
    f.re
}

/// `P ρ P`.
pub fn conjugate(rho: &Matrix2, p: Pauli) -> Matrix2 {
    let m = p.matrix();
    let zero = C::new(0.0, 0.0);
    let mut out = [[zero; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            for a in 0..2 {
                for b in 0..2 {
                    // P is Hermitian, so P† = P
                    out[i][j] += m[i][a] * rho[a][b] * m[b][j];
                }
            }
        }
    }
    out
}
