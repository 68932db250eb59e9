use std::fmt;

use crate::ghcore::{bit, Bits};

use super::perm::Permutation;
use super::PbpError;

/// `(index, on_true, on_false)`: evaluates to `on_true` when input bit
/// `index` (1-based) is set, to `on_false` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Instruction {
    pub index: usize,
    pub on_true: Permutation,
    pub on_false: Permutation,
}

impl Instruction {
    pub fn new(index: usize, on_true: Permutation, on_false: Permutation) -> Self {
        Instruction { index, on_true, on_false }
    }

    /// An instruction whose value does not depend on its input bit.
    pub fn constant(index: usize, value: Permutation) -> Self {
        Instruction { index, on_true: value, on_false: value }
    }

    /// Value on input `z` of length `len`.
    pub fn value(&self, z: u64, len: usize) -> Permutation {
        if bit(z, len, self.index) {
            self.on_true
        } else {
            self.on_false
        }
    }

    fn left_mul(self, t: Permutation) -> Self {
        Instruction { index: self.index, on_true: t * self.on_true, on_false: t * self.on_false }
    }

    fn right_mul(self, t: Permutation) -> Self {
        Instruction { index: self.index, on_true: self.on_true * t, on_false: self.on_false * t }
    }
}

impl fmt::Display for Instruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.index, self.on_true, self.on_false)
    }
}

/// A width-5 permutation branching program over `input_len` bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Program {
    input_len: usize,
    instructions: Vec<Instruction>,
}

impl Program {
    pub fn new(input_len: usize, instructions: Vec<Instruction>) -> Result<Self, PbpError> {
        if input_len > 64 {
            return Err(PbpError::InputTooLong(input_len));
        }
        if let Some(bad) = instructions.iter().find(|i| i.index == 0 || i.index > input_len) {
            return Err(PbpError::IndexOutOfRange { index: bad.index, input_len });
        }
        Ok(Program { input_len, instructions })
    }

    pub fn input_len(&self) -> usize {
        self.input_len
    }

    pub fn instructions(&self) -> &[Instruction] {
        &self.instructions
    }

    pub fn len(&self) -> usize {
        self.instructions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instructions.is_empty()
    }

    /// Product of the instruction values, instruction 1 acting first.
    pub fn eval(&self, z: u64) -> Permutation {
        self.instructions
            .iter()
            .fold(Permutation::IDENTITY, |acc, ins| acc * ins.value(z, self.input_len))
    }

    pub fn eval_bits(&self, z: &Bits) -> Result<Permutation, PbpError> {
        if z.len != self.input_len {
            return Err(PbpError::LengthMismatch { expected: self.input_len, got: z.len });
        }
        Ok(self.eval(z.value))
    }

    pub(crate) fn concat(mut self, other: Program) -> Program {
        self.instructions.extend(other.instructions);
        self
    }
}

fn require_five_cycle(p: &Permutation) -> Result<(), PbpError> {
    if p.is_five_cycle() {
        Ok(())
    } else {
        Err(PbpError::NotFiveCycle(*p))
    }
}

/// Re-targets a program from output `current` to output `target`.
///
/// With `target = θ·current·θ⁻¹`, the first instruction is multiplied by `θ`
/// on the left and the last by `θ⁻¹` on the right. Length is unchanged.
pub fn conjugate_output(p: &Program, current: Permutation, target: Permutation) -> Result<Program, PbpError> {
    require_five_cycle(&current)?;
    require_five_cycle(&target)?;
    if p.is_empty() {
        return Err(PbpError::EmptyProgram);
    }
    let theta = current.conjugator_to(&target).expect("five-cycles are conjugate");
    let mut ins = p.instructions.clone();
    let last = ins.len() - 1;
    ins[0] = ins[0].left_mul(theta);
    ins[last] = ins[last].right_mul(theta.inverse());
    Ok(Program { input_len: p.input_len, instructions: ins })
}

/// A program of the same length computing the negation, with output `target`.
///
/// The last instruction is multiplied on the right by `current⁻¹`, which
/// swaps the roles of `e` and the cycle; the result is then re-targeted.
pub fn negate_program(p: &Program, current: Permutation, target: Permutation) -> Result<Program, PbpError> {
    require_five_cycle(&current)?;
    if p.is_empty() {
        return Err(PbpError::EmptyProgram);
    }
    let mut ins = p.instructions.clone();
    let last = ins.len() - 1;
    ins[last] = ins[last].right_mul(current.inverse());
    let flipped = Program { input_len: p.input_len, instructions: ins };
    conjugate_output(&flipped, current.inverse(), target)
}
