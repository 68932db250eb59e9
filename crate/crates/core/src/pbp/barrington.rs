//! Barrington's construction: a circuit of depth `d` becomes a width-5
//! program of length at most `4^d`.

use super::circuit::{Circuit, Gate, Wire};
use super::perm::Permutation;
use super::program::{conjugate_output, negate_program, Instruction, Program};
use super::PbpError;

/// The two five-cycles used at every AND node. Their commutator
/// `μ₁ μ₂ μ₁⁻¹ μ₂⁻¹` is the five-cycle `(13254)`.
pub fn mu1() -> Permutation {
    Permutation::cycle(&[1, 2, 3, 4, 5]).expect("valid cycle")
}

pub fn mu2() -> Permutation {
    Permutation::cycle(&[1, 3, 5, 4, 2]).expect("valid cycle")
}

/// Output cycle of programs returned by [`compile_circuit`].
pub fn default_output() -> Permutation {
    mu1()
}

/// Compiles with output `(12345)`: the program evaluates to that cycle on
/// inputs where the circuit is 1 and to the identity elsewhere.
pub fn compile_circuit(c: &Circuit) -> Result<Program, PbpError> {
    compile_circuit_to(c, default_output())
}

pub fn compile_circuit_to(c: &Circuit, output: Permutation) -> Result<Program, PbpError> {
    if !output.is_five_cycle() {
        return Err(PbpError::NotFiveCycle(output));
    }
    build(c, c.output(), output)
}

fn build(c: &Circuit, w: Wire, target: Permutation) -> Result<Program, PbpError> {
    let len = c.input_len();
    match w {
        Wire::Input(j) => Program::new(len, vec![Instruction::new(j, target, Permutation::IDENTITY)]),
        Wire::Gate(g) => match c.gate(g) {
            Gate::Not(a) => negate_program(&build(c, a, mu1())?, mu1(), target),
            Gate::And(a, b) => {
                let p1 = build(c, a, mu1())?;
                let p2 = build(c, b, mu2())?;
                commutator(p1, p2, target)
            }
            // a ∨ b = ¬(¬a ∧ ¬b)
            Gate::Or(a, b) => {
                let n1 = negate_program(&build(c, a, mu1())?, mu1(), mu1())?;
                let n2 = negate_program(&build(c, b, mu2())?, mu2(), mu2())?;
                let and = commutator(n1, n2, mu1())?;
                negate_program(&and, mu1(), target)
            }
        },
    }
}

/// `P₁ P₂ P₁' P₂'` where the primed programs output the inverse cycles.
fn commutator(p1: Program, p2: Program, target: Permutation) -> Result<Program, PbpError> {
    let p1_inv = conjugate_output(&p1, mu1(), mu1().inverse())?;
    let p2_inv = conjugate_output(&p2, mu2(), mu2().inverse())?;
    let comm = mu1() * mu2() * mu1().inverse() * mu2().inverse();
    let whole = p1.concat(p2).concat(p1_inv).concat(p2_inv);
    conjugate_output(&whole, comm, target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pbp::circuit::Circuit;

    #[test]
    fn bare_wire_is_one_instruction() {
        let c = Circuit::new(1, vec![], Wire::Input(2)).unwrap();
        let p = compile_circuit(&c).unwrap();
        assert_eq!(p.len(), 1);
        assert!(p.eval(0b00).is_identity());
        assert_eq!(p.eval(0b01), default_output());
    }

    #[test]
    fn and_gate_has_length_four() {
        let c = Circuit::new(1, vec![Gate::And(Wire::Input(1), Wire::Input(2))], Wire::Gate(0)).unwrap();
        let p = compile_circuit(&c).unwrap();
        assert!(p.len() <= 4);
        for z in 0..4 {
            assert_eq!(!p.eval(z).is_identity(), c.eval(z));
        }
    }

    #[test]
    fn not_costs_nothing() {
        let c = Circuit::new(1, vec![Gate::Not(Wire::Input(1)), Gate::Not(Wire::Gate(0))], Wire::Gate(1)).unwrap();
        let p = compile_circuit(&c).unwrap();
        assert_eq!(p.len(), 1);
        for z in 0..4 {
            assert_eq!(!p.eval(z).is_identity(), c.eval(z));
        }
    }

    #[test]
    fn or_gate() {
        let c = Circuit::new(1, vec![Gate::Or(Wire::Input(1), Wire::Input(2))], Wire::Gate(0)).unwrap();
        let p = compile_circuit(&c).unwrap();
        assert_eq!(p.len(), 4);
        for z in 0..4 {
            let v = p.eval(z);
            assert_eq!(!v.is_identity(), c.eval(z));
            if c.eval(z) {
                assert_eq!(v, default_output());
            }
        }
    }

    #[test]
    fn rejects_non_cycle_output() {
        let c = Circuit::new(1, vec![], Wire::Input(1)).unwrap();
        assert!(compile_circuit_to(&c, "(12)(345)".parse().unwrap()).is_err());
    }
}
