use std::fmt;

use crate::ghcore::bit;

use super::machine::TmSpec;
use super::TmError;

/// Everything about the machine except the input tape contents.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Configuration {
    pub state: usize,
    pub input_head: usize,
    pub work_heads: Vec<usize>,
    pub work: Vec<Vec<u8>>,
}

impl Configuration {
    pub fn initial(m: &TmSpec) -> Self {
        Configuration {
            state: m.start,
            input_head: 0,
            work_heads: vec![0; m.tapes.len()],
            work: m.tapes.clone(),
        }
    }

    pub fn display<'a>(&'a self, m: &'a TmSpec) -> impl fmt::Display + 'a {
        ConfigDisplay { c: self, m }
    }
}

struct ConfigDisplay<'a> {
    c: &'a Configuration,
    m: &'a TmSpec,
}

impl fmt::Display for ConfigDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.m.state_name(self.c.state), self.c.input_head)?;
        for (tape, &h) in self.c.work.iter().zip(&self.c.work_heads) {
            f.write_str(" ")?;
            for (i, &s) in tape.iter().enumerate() {
                if i == h {
                    write!(f, "[{}]", s as char)?;
                } else {
                    write!(f, "{}", s as char)?;
                }
            }
        }
        Ok(())
    }
}

/// The read-only input tape `<x y>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InputTape {
    pub n: usize,
    pub x: u64,
    pub y: u64,
}

impl InputTape {
    pub fn symbol(&self, pos: usize) -> u8 {
        let n = self.n;
        match pos {
            0 => b'<',
            p if p <= n => b'0' + bit(self.x, n, p) as u8,
            p if p <= 2 * n => b'0' + bit(self.y, n, p - n) as u8,
            _ => b'>',
        }
    }
}

/// One transition from a non-halting configuration.
pub fn step(m: &TmSpec, tape: &InputTape, c: &Configuration) -> Result<Configuration, TmError> {
    let input = tape.symbol(c.input_head);
    let under: Vec<u8> = c.work.iter().zip(&c.work_heads).map(|(t, &h)| t[h]).collect();
    let rule = m.rule_for(c.state, input, &under).ok_or_else(|| TmError::NoTransition {
        state: m.state_name(c.state).to_string(),
        input: input as char,
        work: String::from_utf8_lossy(&under).into_owned(),
    })?;
    let input_head = rule
        .input_move
        .apply(c.input_head, m.input_tape_len())
        .ok_or(TmError::SpaceViolation { tape: 0, pos: c.input_head })?;
    let mut work = c.work.clone();
    let mut work_heads = c.work_heads.clone();
    for (t, ((w, mv), h)) in rule.write.iter().zip(&rule.work_moves).zip(work_heads.iter_mut()).enumerate() {
        if let Some(s) = w {
            work[t][*h] = *s;
        }
        *h = mv.apply(*h, work[t].len()).ok_or(TmError::SpaceViolation { tape: t + 1, pos: *h })?;
    }
    Ok(Configuration { state: rule.next, input_head, work_heads, work })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub accepted: bool,
    pub steps: usize,
}

/// All configurations of a run, starting with the initial one and ending
/// with the halting one.
#[derive(Debug, Clone)]
pub struct Trace {
    pub configs: Vec<Configuration>,
    pub accepted: bool,
}

impl Trace {
    pub fn steps(&self) -> usize {
        self.configs.len() - 1
    }

    pub fn head_positions(&self) -> Vec<usize> {
        self.configs.iter().map(|c| c.input_head).collect()
    }
}

fn check_inputs(m: &TmSpec, x: u64, y: u64) -> Result<InputTape, TmError> {
    if m.n > 32 || x >> m.n != 0 || y >> m.n != 0 {
        return Err(TmError::InputOutOfRange { n: m.n });
    }
    Ok(InputTape { n: m.n, x, y })
}

pub fn trace(m: &TmSpec, x: u64, y: u64) -> Result<Trace, TmError> {
    let tape = check_inputs(m, x, y)?;
    let mut configs = vec![Configuration::initial(m)];
    loop {
        let c = configs.last().expect("non-empty");
        if m.is_halting(c.state) {
            let accepted = c.state == m.accept;
            return Ok(Trace { configs, accepted });
        }
        if configs.len() > m.budget {
            return Err(TmError::BudgetExceeded { budget: m.budget });
        }
        let next = step(m, &tape, c)?;
        configs.push(next);
    }
}

/// Simulates the machine on `x ‖ y`.
pub fn run(m: &TmSpec, x: u64, y: u64) -> Result<Outcome, TmError> {
    let tape = check_inputs(m, x, y)?;
    let mut c = Configuration::initial(m);
    let mut steps = 0;
    while !m.is_halting(c.state) {
        if steps == m.budget {
            return Err(TmError::BudgetExceeded { budget: m.budget });
        }
        c = step(m, &tape, &c)?;
        steps += 1;
    }
    Ok(Outcome { accepted: c.state == m.accept, steps })
}
