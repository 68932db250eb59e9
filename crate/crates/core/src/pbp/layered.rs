//! Programs split into alternating Alice/Bob layers, and their garden-hose
//! games.

use std::sync::Arc;

use crate::ghcore::{GameError, GardenHoseGame, Matching, Side, Strategy};

use super::perm::Permutation;
use super::program::{Instruction, Program};
use super::PbpError;

/// A maximal run of instructions owned by one player. Its value is a
/// permutation that depends only on that player's input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layer {
    pub owner: Side,
    pub instructions: Vec<Instruction>,
}

impl Layer {
    fn identity(owner: Side) -> Layer {
        Layer { owner, instructions: Vec::new() }
    }

    /// Value of the layer on the owner's `n`-bit input.
    pub fn value(&self, input: u64, n: usize) -> Permutation {
        let offset = if self.owner == Side::Alice { 0 } else { n };
        self.instructions.iter().fold(Permutation::IDENTITY, |acc, ins| {
            let b = crate::ghcore::bit(input, n, ins.index - offset);
            acc * if b { ins.on_true } else { ins.on_false }
        })
    }
}

/// Layers alternating Alice, Bob, Alice, ..., ending with Bob.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlternatingProgram {
    n: usize,
    layers: Vec<Layer>,
}

fn owner(index: usize, n: usize) -> Side {
    if index <= n {
        Side::Alice
    } else {
        Side::Bob
    }
}

impl AlternatingProgram {
    /// Validates ownership, alternation (Alice first) and even length.
    pub fn from_layers(n: usize, layers: Vec<Layer>) -> Result<Self, PbpError> {
        if layers.is_empty() || layers.len() % 2 == 1 {
            return Err(PbpError::NotAlternating(format!("{} layers, need a positive even count", layers.len())));
        }
        for (i, layer) in layers.iter().enumerate() {
            let expected = if i % 2 == 0 { Side::Alice } else { Side::Bob };
            if layer.owner != expected {
                return Err(PbpError::NotAlternating(format!("layer {} belongs to {}", i + 1, layer.owner)));
            }
            if let Some(ins) = layer.instructions.iter().find(|ins| ins.index == 0 || ins.index > 2 * n || owner(ins.index, n) != expected) {
                return Err(PbpError::NotAlternating(format!(
                    "layer {} reads input bit {} it does not own",
                    i + 1,
                    ins.index
                )));
            }
        }
        Ok(AlternatingProgram { n, layers })
    }

    /// One layer per instruction; fails unless the program already
    /// alternates starting with Alice and has even length.
    pub fn from_strict(p: &Program, n: usize) -> Result<Self, PbpError> {
        check_len(p, n)?;
        let layers = p
            .instructions()
            .iter()
            .map(|ins| Layer { owner: owner(ins.index, n), instructions: vec![*ins] })
            .collect();
        Self::from_layers(n, layers)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn len(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    pub fn eval(&self, x: u64, y: u64) -> Permutation {
        self.layers.iter().fold(Permutation::IDENTITY, |acc, l| {
            acc * l.value(if l.owner == Side::Alice { x } else { y }, self.n)
        })
    }
}

fn check_len(p: &Program, n: usize) -> Result<(), PbpError> {
    if p.input_len() != 2 * n {
        return Err(PbpError::LengthMismatch { expected: 2 * n, got: p.input_len() });
    }
    Ok(())
}

/// Groups maximal same-owner runs into layers, inserting an empty Alice
/// layer in front if the program starts with Bob and an empty Bob layer at
/// the end if needed for even length.
pub fn alternate(p: &Program, n: usize) -> Result<AlternatingProgram, PbpError> {
    check_len(p, n)?;
    let mut layers = vec![Layer::identity(Side::Alice)];
    for ins in p.instructions() {
        let who = owner(ins.index, n);
        let last = layers.last_mut().expect("non-empty");
        if last.owner == who {
            last.instructions.push(*ins);
        } else {
            layers.push(Layer { owner: who, instructions: vec![*ins] });
        }
    }
    if layers.len() % 2 == 1 {
        layers.push(Layer::identity(Side::Bob));
    }
    AlternatingProgram::from_layers(n, layers)
}

/// Pipe `Q^i_k` (layer `i` in `1..=l`, position `k` in `1..=5`).
fn q(i: usize, k: u8) -> u32 {
    (5 * (i - 1) + k as usize) as u32
}

/// The game of size `5l + 4` for an alternating program of length `l`.
///
/// Alice sends the tap into `Q^1_{P_1(1)}`. Between layers `i` and `i + 1`
/// the owner of layer `i + 1` (on whose side the water arrives) joins
/// `Q^i_k` to `Q^{i+1}_{P_{i+1}(k)}`. After the last layer the water is back
/// at Alice in `Q^l_{P(1)}`: she leaves `Q^l_1` open and routes `Q^l_2..5`
/// into four exit pipes that Bob never touches.
pub fn program_to_game(p: &AlternatingProgram) -> Result<GardenHoseGame, GameError> {
    let l = p.len();
    let n = p.n;
    let prog = Arc::new(p.clone());
    let exit = move |k: u8| (5 * l) as u32 + (k as u32 - 1);

    let pa = prog.clone();
    let alice = Strategy::rule(move |x| {
        let mut m = Matching::empty();
        let first = pa.layers[0].value(x, n);
        m.push(0, q(1, first.apply(1)));
        for i in (2..l).step_by(2) {
            // layer i + 1 (1-based) is Alice's
            let perm = pa.layers[i].value(x, n);
            for k in 1..=5u8 {
                m.push(q(i, k), q(i + 1, perm.apply(k)));
            }
        }
        for k in 2..=5u8 {
            m.push(q(l, k), exit(k));
        }
        m
    });
    let pb = prog;
    let bob = Strategy::rule(move |y| {
        let mut m = Matching::empty();
        for i in (1..l).step_by(2) {
            let perm = pb.layers[i].value(y, n);
            for k in 1..=5u8 {
                m.push(q(i, k), q(i + 1, perm.apply(k)));
            }
        }
        m
    });
    GardenHoseGame::new(n, (5 * l + 4) as u32, alice, bob)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ghcore::{computes, flow, validate_game, BooleanFunction};
    use crate::pbp::{compile_circuit, Circuit, Gate, Wire};

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn alternating_program_is_kept() {
        let prog = Program::new(
            2,
            vec![Instruction::new(1, p("(12345)"), Permutation::IDENTITY), Instruction::new(2, p("(13542)"), p("(12)"))],
        )
        .unwrap();
        let a = alternate(&prog, 1).unwrap();
        assert_eq!(a.len(), 2);
        let strict = AlternatingProgram::from_strict(&prog, 1).unwrap();
        assert_eq!(a, strict);
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(a.eval(x, y), prog.eval((x << 1) | y));
            }
        }
    }

    #[test]
    fn consecutive_alice_instructions_merge() {
        let prog = Program::new(
            4,
            vec![
                Instruction::new(1, p("(12345)"), p("(12)")),
                Instruction::new(2, p("(13542)"), p("(345)")),
                Instruction::new(3, p("(15)"), Permutation::IDENTITY),
            ],
        )
        .unwrap();
        let a = alternate(&prog, 2).unwrap();
        assert_eq!(a.len(), 2);
        assert_eq!(a.layers()[0].instructions.len(), 2);
        for z in 0..16u64 {
            assert_eq!(a.eval(z >> 2, z & 3), prog.eval(z));
        }
        assert!(AlternatingProgram::from_strict(&prog, 2).is_err());
    }

    #[test]
    fn all_alice_program_gets_an_identity_bob_layer() {
        let prog = Program::new(2, vec![Instruction::new(1, p("(12345)"), Permutation::IDENTITY)]).unwrap();
        let a = alternate(&prog, 1).unwrap();
        assert_eq!(a.len(), 2);
        assert_eq!(a.layers()[1].owner, Side::Bob);
        assert!(a.layers()[1].instructions.is_empty());
    }

    #[test]
    fn bob_first_program_gets_an_empty_alice_layer() {
        let prog = Program::new(2, vec![Instruction::new(2, p("(12345)"), Permutation::IDENTITY)]).unwrap();
        let a = alternate(&prog, 1).unwrap();
        assert_eq!(a.len(), 2);
        assert!(a.layers()[0].instructions.is_empty());
    }

    #[test]
    fn and_gate_pipeline() {
        let c = Circuit::new(1, vec![Gate::And(Wire::Input(1), Wire::Input(2))], Wire::Gate(0)).unwrap();
        let prog = compile_circuit(&c).unwrap();
        let alt = alternate(&prog, 1).unwrap();
        let g = program_to_game(&alt).unwrap();
        assert_eq!(g.size() as usize, 5 * alt.len() + 4);
        assert!(validate_game(&g).is_empty());
        let f = BooleanFunction::and(1).unwrap();
        assert!(computes(&g, &f).unwrap().holds);
    }

    #[test]
    fn length_two_program_gives_fourteen_pipes() {
        let prog = Program::new(
            2,
            vec![Instruction::new(1, p("(12345)"), Permutation::IDENTITY), Instruction::constant(2, Permutation::IDENTITY)],
        )
        .unwrap();
        let g = program_to_game(&AlternatingProgram::from_strict(&prog, 1).unwrap()).unwrap();
        assert_eq!(g.size(), 14);
        // f = 0 at x = 0: the water comes back through Q^l_1 = pipe 6
        let path = flow(&g, 0, 1).unwrap();
        assert_eq!(path.terminal_side, Side::Alice);
        assert_eq!(path.exit().vertex, q(2, 1));
        assert_eq!(flow(&g, 1, 0).unwrap().terminal_side, Side::Bob);
    }

    #[test]
    fn invalid_layerings_are_rejected() {
        assert!(AlternatingProgram::from_layers(1, vec![]).is_err());
        assert!(AlternatingProgram::from_layers(1, vec![Layer::identity(Side::Bob), Layer::identity(Side::Alice)]).is_err());
        let wrong = Layer { owner: Side::Alice, instructions: vec![Instruction::constant(2, Permutation::IDENTITY)] };
        assert!(AlternatingProgram::from_layers(1, vec![wrong, Layer::identity(Side::Bob)]).is_err());
    }
}
