//! Compiling a reversible, input-oblivious machine into a garden-hose game.
//!
//! Every crossing configuration labels one pipe. Alice simulates the
//! machine while the input head is on `0..=n` (she knows `x`), Bob while it
//! is on `n+1..=2n+1`. A segment starts at the tap (Alice, initial
//! configuration) or at the pipe of a crossing configuration entering the
//! player's half, and ends by halting or by crossing over:
//!
//! * Alice: accept → next free ACCEPT pipe, reject → left open, crossing →
//!   the `C_B` pipe of the new configuration.
//! * Bob: accept → left open, reject → next free REJECT pipe, crossing →
//!   the `C_A` pipe.
//!
//! ACCEPT pipes are open on Bob's side and REJECT pipes on Alice's, so the
//! water leaves on Bob's side exactly when the machine accepts.

use crate::ghcore::{GardenHoseGame, Matching, Side, Strategy};

use super::analysis::{crossing_sets, CrossingSets};
use super::exec::{step, Configuration, InputTape};
use super::machine::TmSpec;
use super::TmError;

#[derive(Debug, Clone, PartialEq, Eq)]
enum SegmentEnd {
    Halt(bool),
    Cross(Configuration),
    /// Budget exhausted or machine stuck; the pipe stays unconnected.
    Stuck,
}

fn segment(m: &TmSpec, tape: &InputTape, side: Side, start: &Configuration) -> SegmentEnd {
    let n = m.n;
    let inside = |h: usize| if side == Side::Alice { h <= n } else { h > n };
    let mut c = start.clone();
    for _ in 0..=m.budget {
        if m.is_halting(c.state) {
            return SegmentEnd::Halt(c.state == m.accept);
        }
        match step(m, tape, &c) {
            Ok(next) if inside(next.input_head) => c = next,
            Ok(next) => return SegmentEnd::Cross(next),
            Err(_) => return SegmentEnd::Stuck,
        }
    }
    SegmentEnd::Stuck
}

/// Pipe numbering of a compiled game (all ranges 1-based, contiguous, in
/// this order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipeLayout {
    pub c_a: usize,
    pub c_b: usize,
    pub accept: usize,
    pub reject: usize,
}

impl PipeLayout {
    pub fn size(&self) -> usize {
        self.c_a + self.c_b + self.accept + self.reject
    }

    fn a_pipe(&self, i: usize) -> u32 {
        (1 + i) as u32
    }

    fn b_pipe(&self, i: usize) -> u32 {
        (1 + self.c_a + i) as u32
    }

    fn accept_pipe(&self, i: usize) -> u32 {
        (1 + self.c_a + self.c_b + i) as u32
    }

    fn reject_pipe(&self, i: usize) -> u32 {
        (1 + self.c_a + self.c_b + self.accept + i) as u32
    }
}

#[derive(Debug, Clone)]
pub struct CompiledTm {
    pub game: GardenHoseGame,
    pub sets: CrossingSets,
    pub layout: PipeLayout,
}

struct Wiring {
    side: Side,
    input: u64,
    matching: Matching,
    used: Vec<bool>,
}

impl Wiring {
    fn new(side: Side, input: u64, size: usize) -> Self {
        Wiring { side, input, matching: Matching::empty(), used: vec![false; size + 1] }
    }

    fn connect(&mut self, from: u32, to: u32) -> Result<(), TmError> {
        if std::mem::replace(&mut self.used[to as usize], true) {
            return Err(TmError::WiringCollision { side: self.side, input: self.input, pipe: to });
        }
        self.matching.push(from, to);
        Ok(())
    }
}

/// Builds the game. Fails with [`TmError::WiringCollision`] when two
/// segments of one player end at the same configuration pipe, which can
/// only happen for a machine that is not reversible.
pub fn compile_tm(m: &TmSpec) -> Result<CompiledTm, TmError> {
    let sets = crossing_sets(m)?;
    let n = m.n;
    let inputs = 0..1u64 << n;
    let start = Configuration::initial(m);

    // Alice's segment ends, tap first, then one per C_A configuration.
    let alice_ends: Vec<Vec<SegmentEnd>> = inputs
        .clone()
        .map(|x| {
            let tape = InputTape { n, x, y: 0 };
            std::iter::once(&start)
                .chain(&sets.c_a)
                .map(|c| segment(m, &tape, Side::Alice, c))
                .collect()
        })
        .collect();
    // An extra ACCEPT pipe is only needed if the tap segment can accept
    // without ever crossing.
    let tap_accepts = alice_ends.iter().any(|e| e[0] == SegmentEnd::Halt(true));
    let layout = PipeLayout {
        c_a: sets.c_a.len(),
        c_b: sets.c_b.len(),
        accept: sets.c_a.len() + tap_accepts as usize,
        reject: sets.c_b.len(),
    };
    let size = layout.size();

    let mut alice = Vec::with_capacity(1 << n);
    for (x, ends) in inputs.clone().zip(&alice_ends) {
        let mut w = Wiring::new(Side::Alice, x, size);
        let mut next_accept = 0;
        for (k, end) in ends.iter().enumerate() {
            let from = if k == 0 { 0 } else { layout.a_pipe(k - 1) };
            match end {
                SegmentEnd::Halt(true) => {
                    w.connect(from, layout.accept_pipe(next_accept))?;
                    next_accept += 1;
                }
                SegmentEnd::Cross(c) => {
                    if let Some(i) = sets.index_b(c) {
                        w.connect(from, layout.b_pipe(i))?;
                    }
                }
                SegmentEnd::Halt(false) | SegmentEnd::Stuck => {}
            }
        }
        alice.push(w.matching);
    }

    let mut bob = Vec::with_capacity(1 << n);
    for y in inputs {
        let tape = InputTape { n, x: 0, y };
        let mut w = Wiring::new(Side::Bob, y, size);
        let mut next_reject = 0;
        for (k, c) in sets.c_b.iter().enumerate() {
            let from = layout.b_pipe(k);
            match segment(m, &tape, Side::Bob, c) {
                SegmentEnd::Halt(false) => {
                    w.connect(from, layout.reject_pipe(next_reject))?;
                    next_reject += 1;
                }
                SegmentEnd::Cross(d) => {
                    if let Some(i) = sets.index_a(&d) {
                        w.connect(from, layout.a_pipe(i))?;
                    }
                }
                SegmentEnd::Halt(true) | SegmentEnd::Stuck => {}
            }
        }
        bob.push(w.matching);
    }

    let game = GardenHoseGame::new(n, size as u32, Strategy::Table(alice), Strategy::Table(bob))?;
    Ok(CompiledTm { game, sets, layout })
}
