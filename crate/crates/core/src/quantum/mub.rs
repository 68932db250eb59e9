//! Mutually unbiased bases from a partition of the non-identity Pauli
//! strings into `2ⁿ + 1` classes of `2ⁿ − 1` commuting strings, and the
//! teleportation attack on the protocol that encodes `x` as `|e^a_x⟩`.

use std::collections::HashSet;

use num_complex::Complex64 as C;

use crate::ghcore::bit;

use super::bell::{bell_measure, BellOutcome, OutcomeSource};
use super::pauli::{Pauli, PauliString};
use super::state::StateVector;
use super::QuantumError;

pub const MAX_MUB_N: usize = 3;

/// Pauli string number `i`: base-4 digit `j` is the letter on qubit `j`
/// (`I, X, Y, Z` = `0..4`).
fn string_of(n: usize, i: usize) -> PauliString {
    PauliString::new((0..n).map(|j| Pauli::ALL[i >> (2 * j) & 3]).collect())
}

fn symplectic_key(n: usize, p: &PauliString) -> u64 {
    let (x, z) = p.symplectic();
    x | z << n
}

#[derive(Debug, Clone)]
pub struct MubFamily {
    n: usize,
    classes: Vec<Vec<PauliString>>,
    generators: Vec<Vec<PauliString>>,
    bases: Vec<Vec<StateVector>>,
}

impl MubFamily {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `2ⁿ + 1` classes of `2ⁿ − 1` strings each, sorted by string number.
    pub fn classes(&self) -> &[Vec<PauliString>] {
        &self.classes
    }

    /// `n` independent strings generating each class; bit `j` (MSB-first)
    /// of a basis index `x` selects the eigenvalue `(−1)^{x_j}` of
    /// generator `j`.
    pub fn generators(&self) -> &[Vec<PauliString>] {
        &self.generators
    }

    pub fn bases(&self) -> &[Vec<StateVector>] {
        &self.bases
    }

    pub fn basis_vector(&self, a: usize, x: usize) -> Result<&StateVector, QuantumError> {
        self.bases
            .get(a)
            .and_then(|b| b.get(x))
            .ok_or(QuantumError::Index(format!("basis {a}, vector {x}")))
    }

    /// `max | |⟨e^a_i|e^b_j⟩|² − 2⁻ⁿ |` over distinct bases.
    pub fn max_unbiasedness_error(&self) -> f64 {
        let d = 1.0 / (1u64 << self.n) as f64;
        let mut worst: f64 = 0.0;
        for a in 0..self.bases.len() {
            for b in a + 1..self.bases.len() {
                for u in &self.bases[a] {
                    for v in &self.bases[b] {
                        worst = worst.max((u.inner(v).norm_sqr() - d).abs());
                    }
                }
            }
        }
        worst
    }

    /// `max |⟨e^a_i|e^a_j⟩ − δ_ij|` within bases.
    pub fn max_orthonormality_error(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for basis in &self.bases {
            for (i, u) in basis.iter().enumerate() {
                for (j, v) in basis.iter().enumerate() {
                    let want = if i == j { 1.0 } else { 0.0 };
                    worst = worst.max((u.inner(v) - C::new(want, 0.0)).norm());
                }
            }
        }
        worst
    }
}

/// Span of symplectic keys, including 0.
fn span(gens: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64];
    for &g in gens {
        let more: Vec<u64> = out.iter().map(|&v| v ^ g).collect();
        out.extend(more);
    }
    out
}

fn commute_keys(n: usize, a: u64, b: u64) -> bool {
    let mask = (1u64 << n) - 1;
    let (xa, za, xb, zb) = (a & mask, a >> n, b & mask, b >> n);
    ((xa & zb).count_ones() + (za & xb).count_ones()) % 2 == 0
}

/// All maximal commuting subspaces, as bitmasks over string numbers
/// (identity excluded), in increasing order.
fn lagrangians(n: usize) -> Vec<u64> {
    let total = 1usize << (2 * n);
    let keys: Vec<u64> = (0..total).map(|i| symplectic_key(n, &string_of(n, i))).collect();
    let index_of = |k: u64| keys.iter().position(|&v| v == k).expect("every key is a string");
    let mut found = HashSet::new();
    fn extend(
        n: usize,
        keys: &[u64],
        gens: &mut Vec<u64>,
        from: usize,
        found: &mut HashSet<u64>,
        index_of: &dyn Fn(u64) -> usize,
    ) {
        if gens.len() == n {
            let mask = span(gens).into_iter().filter(|&k| k != 0).fold(0u64, |m, k| m | 1 << index_of(k));
            found.insert(mask);
            return;
        }
        let current = span(gens);
        for i in from..keys.len() {
            let k = keys[i];
            if current.contains(&k) || !gens.iter().all(|&g| commute_keys(n, g, k)) {
                continue;
            }
            gens.push(k);
            extend(n, keys, gens, i + 1, found, index_of);
            gens.pop();
        }
    }
    extend(n, &keys, &mut Vec::new(), 1, &mut found, &index_of);
    let mut out: Vec<u64> = found.into_iter().collect();
    out.sort_unstable();
    out
}

/// Exact cover of all non-identity strings by disjoint Lagrangians, always
/// branching on the smallest uncovered string.
fn partition(lags: &[u64], full: u64) -> Option<Vec<u64>> {
    fn go(lags: &[u64], covered: u64, full: u64, chosen: &mut Vec<u64>) -> bool {
        if covered == full {
            return true;
        }
        let e = (full & !covered).trailing_zeros();
        for &l in lags {
            if l >> e & 1 == 1 && l & covered == 0 {
                chosen.push(l);
                if go(lags, covered | l, full, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::new();
    go(lags, 0, full, &mut chosen).then_some(chosen)
}

fn apply_string(p: &PauliString, v: &StateVector) -> StateVector {
    let mut out = v.clone();
    p.apply(&mut out, 0).expect("string length matches the register");
    out
}

/// Common eigenvector of `gens` with eigenvalues `(−1)^{x_j}`, with the
/// first non-negligible amplitude made real and positive.
fn eigenvector(n: usize, gens: &[PauliString], x: usize) -> StateVector {
    let dim = 1usize << n;
    for k in 0..dim {
        let mut amps = vec![C::new(0.0, 0.0); dim];
        amps[k] = C::new(1.0, 0.0);
        let mut v = StateVector::from_amplitudes(amps).expect("basis state");
        for (j, g) in gens.iter().enumerate() {
            let sign = if bit(x as u64, n, j + 1) { -1.0 } else { 1.0 };
            let gv = apply_string(g, &v);
            let projected: Vec<C> = v.amplitudes().iter().zip(gv.amplitudes()).map(|(a, b)| (a + b * sign) / 2.0).collect();
            v = unchecked(projected);
        }
        let norm = v.norm_sqr().sqrt();
        if norm < 1e-6 {
            continue;
        }
        let first = *v.amplitudes().iter().find(|a| a.norm() > 1e-9).expect("non-zero vector");
        let phase = first.conj() / first.norm();
        return unchecked(v.amplitudes().iter().map(|a| a * phase / norm).collect());
    }
    unreachable!("independent commuting generators have a joint eigenvector for every sign pattern")
}

/// Wraps amplitudes that need not be normalized (intermediate projections).
fn unchecked(amps: Vec<C>) -> StateVector {
    let n = amps.len().trailing_zeros() as usize;
    let mut s = StateVector::zero(n).expect("dimension is a power of two");
    s.amplitudes_mut().copy_from_slice(&amps);
    s
}

pub fn build_mub(n: usize) -> Result<MubFamily, QuantumError> {
    if n == 0 || n > MAX_MUB_N {
        return Err(QuantumError::TooLarge { what: "MUB construction", n, cap: MAX_MUB_N });
    }
    let total = 1usize << (2 * n);
    let full = (if total == 64 { u64::MAX } else { (1u64 << total) - 1 }) & !1;
    let parts = partition(&lagrangians(n), full).expect("a Pauli partition exists for every n");
    let mut classes = Vec::new();
    let mut generators = Vec::new();
    let mut bases = Vec::new();
    for mask in parts {
        let members: Vec<PauliString> = (1..total).filter(|&i| mask >> i & 1 == 1).map(|i| string_of(n, i)).collect();
        let mut gens: Vec<PauliString> = Vec::new();
        let mut keys: Vec<u64> = Vec::new();
        for p in &members {
            let k = symplectic_key(n, p);
            if !span(&keys).contains(&k) {
                keys.push(k);
                gens.push(p.clone());
            }
        }
        let basis = (0..1usize << n).map(|x| eigenvector(n, &gens, x)).collect();
        classes.push(members);
        generators.push(gens);
        bases.push(basis);
    }
    Ok(MubFamily { n, classes, generators, bases })
}

/// `z` with `U|e^a_x⟩ = |e^a_z⟩` up to phase, by comparing vectors.
pub fn mub_permute(u: &PauliString, family: &MubFamily, a: usize, x: usize) -> Result<usize, QuantumError> {
    if u.len() != family.n {
        return Err(QuantumError::Index(format!("string of length {} on {} qubits", u.len(), family.n)));
    }
    let v = apply_string(u, family.basis_vector(a, x)?);
    family.bases[a]
        .iter()
        .position(|e| (e.inner(&v).norm_sqr() - 1.0).abs() < 1e-8)
        .ok_or(QuantumError::NoMatch { a, x })
}

/// Same as [`mub_permute`], from commutation alone: `U` flips the sign of
/// every generator it anticommutes with.
pub fn mub_permute_symplectic(u: &PauliString, family: &MubFamily, a: usize, x: usize) -> usize {
    let n = family.n;
    family.generators[a].iter().enumerate().fold(x, |z, (j, g)| {
        if u.commutes_with(g) {
            z
        } else {
            z ^ 1 << (n - 1 - j)
        }
    })
}

#[derive(Debug, Clone)]
pub struct MubAttack {
    pub x_hat: usize,
    /// Outcome of measuring the teleported (uncorrected) state in basis `a`.
    pub z: usize,
    pub outcomes: Vec<BellOutcome>,
    pub correction: PauliString,
    pub epr_pairs: usize,
    pub qubits: usize,
}

/// One party teleports `|e^a_x⟩` qubit by qubit through `n` EPR pairs; the
/// other measures what arrives in basis `a` without correcting. Together
/// they undo the Pauli permutation classically.
pub fn pv_mub_attack(
    family: &MubFamily,
    a: usize,
    x: usize,
    source: &mut impl OutcomeSource,
) -> Result<MubAttack, QuantumError> {
    let n = family.n;
    let e = family.basis_vector(a, x)?;
    let pairs: Vec<(usize, usize)> = (0..n).map(|j| (n + j, 2 * n + j)).collect();
    let mut state = StateVector::with_epr_pairs(e, &pairs)?;
    let mut outcomes = Vec::with_capacity(n);
    for j in 0..n {
        outcomes.push(bell_measure(&mut state, j, n + j, source)?);
    }
    let correction = PauliString::new(outcomes.iter().map(|z| z.correction()).collect());

    // measure qubits 2n..3n in basis a
    let low = 1usize << (2 * n);
    let amps = state.amplitudes();
    let probs: Vec<f64> = family.bases[a]
        .iter()
        .map(|w| {
            (0..low)
                .map(|rest| {
                    w.amplitudes()
                        .iter()
                        .enumerate()
                        .map(|(i, c)| c.conj() * amps[rest | i << (2 * n)])
                        .sum::<C>()
                        .norm_sqr()
                })
                .sum()
        })
        .collect();
    let z = source.pick(&probs)?;

    let mut x_hat = None;
    for cand in 0..1usize << n {
        if mub_permute(&correction, family, a, cand)? == z {
            x_hat = Some(cand);
            break;
        }
    }
    Ok(MubAttack {
        x_hat: x_hat.ok_or(QuantumError::NoMatch { a, x: z })?,
        z,
        outcomes,
        correction,
        epr_pairs: n,
        qubits: 3 * n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::bell::{Forced, Sampled};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn lagrangian_counts() {
        // ∏_{k=1..n} (2^k + 1)
        assert_eq!(lagrangians(1).len(), 3);
        assert_eq!(lagrangians(2).len(), 15);
        assert_eq!(lagrangians(3).len(), 135);
    }

    #[test]
    fn single_qubit_family_is_x_y_z() {
        let fam = build_mub(1).unwrap();
        let names: Vec<String> = fam.classes().iter().map(|c| c[0].to_string()).collect();
        assert_eq!(names, ["+X", "+Y", "+Z"]);
        // X basis: |+⟩ first, then |−⟩
        let plus = fam.basis_vector(0, 0).unwrap().amplitudes();
        assert!((plus[0].re - plus[1].re).abs() < 1e-12 && plus[0].re > 0.0);
        let z0 = fam.basis_vector(2, 0).unwrap().amplitudes();
        assert!((z0[0].re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn z_maps_plus_to_minus() {
        let fam = build_mub(1).unwrap();
        assert_eq!(mub_permute(&"Z".parse().unwrap(), &fam, 0, 0).unwrap(), 1);
        assert_eq!(mub_permute(&"I".parse().unwrap(), &fam, 1, 1).unwrap(), 1);
    }

    #[test]
    fn families_are_valid() {
        for n in 1..=MAX_MUB_N {
            let fam = build_mub(n).unwrap();
            let d = 1usize << n;
            assert_eq!(fam.classes().len(), d + 1);
            let mut all = HashSet::new();
            for class in fam.classes() {
                assert_eq!(class.len(), d - 1);
                for p in class {
                    assert!(class.iter().all(|q| p.commutes_with(q)));
                    assert!(all.insert(p.clone()));
                }
            }
            assert_eq!(all.len(), d * d - 1);
            assert!(fam.max_unbiasedness_error() <= 1e-9, "n={n}");
            assert!(fam.max_orthonormality_error() <= 1e-9);
            // every basis vector is an eigenvector of every class member
            for (a, class) in fam.classes().iter().enumerate() {
                for e in &fam.bases()[a] {
                    for p in class {
                        assert!((e.inner(&apply_string(p, e)).norm() - 1.0).abs() < 1e-9);
                    }
                }
            }
        }
    }

    #[test]
    fn pauli_permutation_two_qubits_exhaustive() {
        let fam = build_mub(2).unwrap();
        for u in 0..16 {
            let p = string_of(2, u);
            for a in 0..5 {
                for x in 0..4 {
                    let z = mub_permute(&p, &fam, a, x).unwrap();
                    assert_eq!(z, mub_permute_symplectic(&p, &fam, a, x));
                }
            }
        }
    }

    #[test]
    fn attack_recovers_x() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for n in 1..=2 {
            let fam = build_mub(n).unwrap();
            for a in 0..(1 << n) + 1 {
                for x in 0..1 << n {
                    let r = pv_mub_attack(&fam, a, x, &mut Sampled(&mut rng)).unwrap();
                    assert_eq!(r.x_hat, x);
                    assert_eq!(r.epr_pairs, n);
                }
            }
        }
    }

    #[test]
    fn identity_outcomes_measure_x_directly() {
        let fam = build_mub(2).unwrap();
        // two Bell outcomes 00, then the basis outcome must be x itself
        let r = pv_mub_attack(&fam, 3, 2, &mut Forced(vec![0, 0, 2].into())).unwrap();
        assert!(r.correction.is_identity());
        assert_eq!((r.z, r.x_hat), (2, 2));
        assert!(pv_mub_attack(&fam, 3, 2, &mut Forced(vec![0, 0, 1].into())).is_err());
    }

    #[test]
    fn size_limits() {
        assert!(build_mub(0).is_err());
        assert!(build_mub(4).is_err());
    }
}
