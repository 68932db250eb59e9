//! Machine descriptions and their text format.
//!
//! ```text
//! machine parity
//! n 2
//! states s acc rej
//! start s
//! accept acc
//! reject rej
//! tape 0
//! budget 1000
//! # state input work... -> next input-move (write move)...
//! s < * -> s R * S
//! s 1 0 -> s R 1 S
//! ```
//!
//! `*` in a read position matches anything; in a write position it keeps
//! the cell. Lines starting with `#` are comments. Rules are tried in order and the first match wins. The input
//! tape holds `<`, then `x`, then `y`, then `>`.

use std::fmt::{self, Write as _};

use super::TmError;

pub const DEFAULT_BUDGET: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Move {
    L,
    R,
    S,
}

impl Move {
    fn parse(s: &str) -> Option<Move> {
        match s {
            "L" => Some(Move::L),
            "R" => Some(Move::R),
            "S" => Some(Move::S),
            _ => None,
        }
    }

    /// New position, or `None` when the head would leave `0..len`.
    pub fn apply(self, pos: usize, len: usize) -> Option<usize> {
        let p = match self {
            Move::L => pos.checked_sub(1)?,
            Move::R => pos + 1,
            Move::S => pos,
        };
        (p < len).then_some(p)
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Move::L => "L",
            Move::R => "R",
            Move::S => "S",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub state: usize,
    /// `None` is the wildcard.
    pub input: Option<u8>,
    pub work: Vec<Option<u8>>,
    pub next: usize,
    pub input_move: Move,
    /// `None` keeps the cell.
    pub write: Vec<Option<u8>>,
    pub work_moves: Vec<Move>,
}

impl Rule {
    pub fn matches(&self, state: usize, input: u8, work: &[u8]) -> bool {
        self.state == state
            && self.input.is_none_or(|s| s == input)
            && self.work.iter().zip(work).all(|(p, &c)| p.is_none_or(|s| s == c))
    }
}

/// A deterministic machine with a read-only input tape of `2n + 2` cells
/// and bounded work tapes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TmSpec {
    pub name: String,
    pub n: usize,
    pub states: Vec<String>,
    pub start: usize,
    pub accept: usize,
    pub reject: usize,
    /// Initial contents of each work tape; the length is the space bound.
    pub tapes: Vec<Vec<u8>>,
    pub rules: Vec<Rule>,
    /// Step budget for a full run and for every simulated segment.
    pub budget: usize,
}

impl TmSpec {
    pub fn is_halting(&self, state: usize) -> bool {
        state == self.accept || state == self.reject
    }

    pub fn input_tape_len(&self) -> usize {
        2 * self.n + 2
    }

    pub fn rule_for(&self, state: usize, input: u8, work: &[u8]) -> Option<&Rule> {
        self.rules.iter().find(|r| r.matches(state, input, work))
    }

    pub fn state_name(&self, s: usize) -> &str {
        &self.states[s]
    }
}

fn sym(c: Option<u8>) -> char {
    c.map_or('*', char::from)
}

pub fn write_tm(m: &TmSpec) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "machine {}", m.name);
    let _ = writeln!(out, "n {}", m.n);
    let _ = writeln!(out, "states {}", m.states.join(" "));
    let _ = writeln!(out, "start {}", m.states[m.start]);
    let _ = writeln!(out, "accept {}", m.states[m.accept]);
    let _ = writeln!(out, "reject {}", m.states[m.reject]);
    for t in &m.tapes {
        let _ = writeln!(out, "tape {}", String::from_utf8_lossy(t));
    }
    let _ = writeln!(out, "budget {}", m.budget);
    for r in &m.rules {
        let mut line = format!("{} {}", m.states[r.state], sym(r.input));
        for w in &r.work {
            let _ = write!(line, " {}", sym(*w));
        }
        let _ = write!(line, " -> {} {}", m.states[r.next], r.input_move);
        for (w, mv) in r.write.iter().zip(&r.work_moves) {
            let _ = write!(line, " {} {}", sym(*w), mv);
        }
        let _ = writeln!(out, "{line}");
    }
    out
}

pub fn parse_tm(text: &str) -> Result<TmSpec, TmError> {
    let perr = |line: usize, msg: String| TmError::Parse { line, msg };
    let mut name = String::from("unnamed");
    let mut n = None;
    let mut states: Vec<String> = Vec::new();
    let (mut start, mut accept, mut reject) = (None, None, None);
    let mut tapes = Vec::new();
    let mut budget = DEFAULT_BUDGET;
    let mut rule_lines = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        // `#` is also a common tape symbol, so only whole-line comments exist
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut toks = line.split_whitespace();
        let key = toks.next().expect("non-empty line");
        let rest: Vec<&str> = toks.collect();
        let one = |what: &str| -> Result<&str, TmError> {
            match rest.as_slice() {
                [v] => Ok(v),
                _ => Err(perr(ln, format!("expected `{what} <value>`"))),
            }
        };
        match key {
            "machine" => name = one("machine")?.to_string(),
            "n" => n = Some(one("n")?.parse::<usize>().map_err(|_| perr(ln, "bad n".into()))?),
            "states" => {
                if rest.is_empty() {
                    return Err(perr(ln, "no states".into()));
                }
                states = rest.iter().map(|s| s.to_string()).collect();
            }
            "start" => start = Some((ln, one("start")?.to_string())),
            "accept" => accept = Some((ln, one("accept")?.to_string())),
            "reject" => reject = Some((ln, one("reject")?.to_string())),
            "tape" => {
                let init = one("tape")?;
                if init.contains('*') {
                    return Err(perr(ln, "`*` is reserved".into()));
                }
                tapes.push(init.as_bytes().to_vec());
            }
            "budget" => budget = one("budget")?.parse().map_err(|_| perr(ln, "bad budget".into()))?,
            _ => rule_lines.push((ln, line)),
        }
    }

    let n = n.ok_or_else(|| perr(0, "missing `n` line".into()))?;
    let lookup = |ln: usize, s: &str| -> Result<usize, TmError> {
        states.iter().position(|t| t == s).ok_or_else(|| perr(ln, format!("undeclared state {s:?}")))
    };
    let named = |v: Option<(usize, String)>, what: &str| -> Result<usize, TmError> {
        let (ln, s) = v.ok_or_else(|| perr(0, format!("missing `{what}` line")))?;
        lookup(ln, &s)
    };
    let start = named(start, "start")?;
    let accept = named(accept, "accept")?;
    let reject = named(reject, "reject")?;
    if accept == reject {
        return Err(perr(0, "accept and reject states coincide".into()));
    }

    let k = tapes.len();
    let pat = |ln: usize, s: &str| -> Result<Option<u8>, TmError> {
        match s.as_bytes() {
            [b'*'] => Ok(None),
            [c] => Ok(Some(*c)),
            _ => Err(perr(ln, format!("symbol {s:?} is not a single character"))),
        }
    };
    let mut rules = Vec::new();
    for (ln, line) in rule_lines {
        let (lhs, rhs) = line.split_once("->").ok_or_else(|| perr(ln, format!("unknown line {line:?}")))?;
        let lhs: Vec<&str> = lhs.split_whitespace().collect();
        let rhs: Vec<&str> = rhs.split_whitespace().collect();
        if lhs.len() != 2 + k || rhs.len() != 2 + 2 * k {
            return Err(perr(ln, format!("rule needs {} fields before `->` and {} after", 2 + k, 2 + 2 * k)));
        }
        let mv = |s: &str| Move::parse(s).ok_or_else(|| perr(ln, format!("bad move {s:?}")));
        rules.push(Rule {
            state: lookup(ln, lhs[0])?,
            input: pat(ln, lhs[1])?,
            work: lhs[2..].iter().map(|s| pat(ln, s)).collect::<Result<_, _>>()?,
            next: lookup(ln, rhs[0])?,
            input_move: mv(rhs[1])?,
            write: rhs[2..].chunks(2).map(|c| pat(ln, c[0])).collect::<Result<_, _>>()?,
            work_moves: rhs[2..].chunks(2).map(|c| mv(c[1])).collect::<Result<_, _>>()?,
        });
    }
    Ok(TmSpec { name, n, states, start, accept, reject, tapes, rules, budget })
}
