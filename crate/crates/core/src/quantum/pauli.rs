use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_complex::Complex64 as C;

use super::state::{Matrix2, StateVector};
use super::QuantumError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    /// Symplectic bits `(x, z)`: `X = (1,0)`, `Z = (0,1)`, `Y = (1,1)`.
    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn from_bits(x: bool, z: bool) -> Pauli {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn matrix(self) -> Matrix2 {
        let (o, l, i) = (C::new(0.0, 0.0), C::new(1.0, 0.0), C::new(0.0, 1.0));
        match self {
            Pauli::I => [[l, o], [o, l]],
            Pauli::X => [[o, l], [l, o]],
            Pauli::Y => [[o, -i], [i, o]],
            Pauli::Z => [[l, o], [o, -l]],
        }
    }

    /// `self · other = i^k · P`, returned as `(k mod 4, P)`.
    pub fn mul_phase(self, other: Pauli) -> (u8, Pauli) {
        use Pauli::*;
        match (self, other) {
            (I, p) | (p, I) => (0, p),
            (a, b) if a == b => (0, I),
            (X, Y) => (1, Z),
            (Y, Z) => (1, X),
            (Z, X) => (1, Y),
            (Y, X) => (3, Z),
            (Z, Y) => (3, X),
            (X, Z) => (3, Y),
            _ => unreachable!(),
        }
    }

    fn letter(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// `i^phase · P₀ ⊗ P₁ ⊗ …`, letter `j` acting on qubit `j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    letters: Vec<Pauli>,
    phase: u8,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        PauliString { letters: vec![Pauli::I; n], phase: 0 }
    }

    pub fn new(letters: Vec<Pauli>) -> Self {
        PauliString { letters, phase: 0 }
    }

    pub fn with_phase(letters: Vec<Pauli>, phase: u8) -> Self {
        PauliString { letters, phase: phase % 4 }
    }

    pub fn single(p: Pauli) -> Self {
        PauliString::new(vec![p])
    }

    /// From packed symplectic bits: bit `j` of `x` / `z` for qubit `j`.
    pub fn from_symplectic(n: usize, x: u64, z: u64) -> Self {
        PauliString::new((0..n).map(|j| Pauli::from_bits(x >> j & 1 == 1, z >> j & 1 == 1)).collect())
    }

    pub fn symplectic(&self) -> (u64, u64) {
        self.letters.iter().enumerate().fold((0, 0), |(x, z), (j, p)| {
            let (a, b) = p.bits();
            (x | (a as u64) << j, z | (b as u64) << j)
        })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Pauli] {
        &self.letters
    }

    /// Exponent `k` of the prefactor `i^k`.
    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn is_identity(&self) -> bool {
        self.letters.iter().all(|&p| p == Pauli::I)
    }

    /// Equal up to a global phase.
    pub fn same_up_to_phase(&self, other: &PauliString) -> bool {
        self.letters == other.letters
    }

    pub fn commutes_with(&self, other: &PauliString) -> bool {
        let (x1, z1) = self.symplectic();
        let (x2, z2) = other.symplectic();
        ((x1 & z2).count_ones() + (z1 & x2).count_ones()) % 2 == 0
    }

    /// Applies the operator to qubits `offset..offset+len` of `state`.
    pub fn apply(&self, state: &mut StateVector, offset: usize) -> Result<(), QuantumError> {
        for (j, &p) in self.letters.iter().enumerate() {
            state.apply_pauli(offset + j, p)?;
        }
        let f = [C::new(1.0, 0.0), C::new(0.0, 1.0), C::new(-1.0, 0.0), C::new(0.0, -1.0)][self.phase as usize];
        if self.phase != 0 {
            state.amplitudes_mut().iter_mut().for_each(|a| *a *= f);
        }
        Ok(())
    }
}

impl Mul for &PauliString {
    type Output = PauliString;

    fn mul(self, rhs: &PauliString) -> PauliString {
        assert_eq!(self.len(), rhs.len(), "Pauli strings of different lengths");
        let mut phase = self.phase + rhs.phase;
        let letters = self
            .letters
            .iter()
            .zip(&rhs.letters)
            .map(|(&a, &b)| {
                let (k, p) = a.mul_phase(b);
                phase += k;
                p
            })
            .collect();
        PauliString { letters, phase: phase % 4 }
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(["+", "+i", "-", "-i"][self.phase as usize])?;
        for p in &self.letters {
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = QuantumError;

    /// `XZ`, `+XZ`, `-iY`, …
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (phase, body) = [("-i", 3), ("+i", 1), ("i", 1), ("-", 2), ("+", 0)]
            .iter()
            .find_map(|&(p, k)| s.strip_prefix(p).map(|rest| (k, rest)))
            .unwrap_or((0, s));
        let letters = body
            .chars()
            .map(|c| match c {
                'I' => Ok(Pauli::I),
                'X' => Ok(Pauli::X),
                'Y' => Ok(Pauli::Y),
                'Z' => Ok(Pauli::Z),
                _ => Err(QuantumError::Parse(s.to_string())),
            })
            .collect::<Result<_, _>>()?;
        Ok(PauliString { letters, phase })
    }
}
