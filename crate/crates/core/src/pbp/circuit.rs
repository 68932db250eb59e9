//! Fan-in-2 Boolean circuits over `x1..xn, y1..yn` and their netlist format.
//!
//! ```text
//! inputs n=2
//! w1 = AND x1 y1
//! w2 = NOT w1
//! w3 = OR w2 x2
//! out = w3
//! ```
//!
//! Wires must be defined before they are used. The `inputs` line is
//! optional; without it `n` is the largest input index mentioned.

use std::collections::HashMap;
use std::fmt::Write as _;

use rand::Rng;

use crate::ghcore::bit;

use super::PbpError;

/// A wire: input bit `1..=2n` (`x_i` is `i`, `y_i` is `n + i`) or gate output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Wire {
    Input(usize),
    Gate(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gate {
    And(Wire, Wire),
    Or(Wire, Wire),
    Not(Wire),
}

impl Gate {
    fn operands(&self) -> Vec<Wire> {
        match *self {
            Gate::And(a, b) | Gate::Or(a, b) => vec![a, b],
            Gate::Not(a) => vec![a],
        }
    }
}

/// A circuit whose gates are listed in topological order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    n: usize,
    gates: Vec<Gate>,
    output: Wire,
    depths: Vec<usize>,
}

impl Circuit {
    pub fn new(n: usize, gates: Vec<Gate>, output: Wire) -> Result<Self, PbpError> {
        if 2 * n > 64 {
            return Err(PbpError::InputTooLong(2 * n));
        }
        let mut depths = Vec::with_capacity(gates.len());
        let check = |w: Wire, upto: usize| match w {
            Wire::Input(j) if j >= 1 && j <= 2 * n => Ok(()),
            Wire::Gate(g) if g < upto => Ok(()),
            _ => Err(PbpError::BadWire(format!("{w:?}"))),
        };
        for (i, g) in gates.iter().enumerate() {
            let mut d = 0;
            for w in g.operands() {
                check(w, i)?;
                if let Wire::Gate(k) = w {
                    d = d.max(depths[k]);
                }
            }
            depths.push(d + 1);
        }
        check(output, gates.len())?;
        Ok(Circuit { n, gates, output, depths })
    }

    /// Bits per player.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn input_len(&self) -> usize {
        2 * self.n
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn output(&self) -> Wire {
        self.output
    }

    pub fn gate(&self, i: usize) -> Gate {
        self.gates[i]
    }

    /// Longest input-to-output path, counting every gate.
    pub fn depth(&self) -> usize {
        self.wire_depth(self.output)
    }

    pub fn wire_depth(&self, w: Wire) -> usize {
        match w {
            Wire::Input(_) => 0,
            Wire::Gate(g) => self.depths[g],
        }
    }

    /// Gate-by-gate evaluation on `z = x ‖ y` (`2n` bits, MSB-first).
    pub fn eval(&self, z: u64) -> bool {
        let len = self.input_len();
        let mut vals = Vec::with_capacity(self.gates.len());
        let get = |w: Wire, vals: &Vec<bool>| match w {
            Wire::Input(j) => bit(z, len, j),
            Wire::Gate(g) => vals[g],
        };
        for g in &self.gates {
            let v = match *g {
                Gate::And(a, b) => get(a, &vals) && get(b, &vals),
                Gate::Or(a, b) => get(a, &vals) || get(b, &vals),
                Gate::Not(a) => !get(a, &vals),
            };
            vals.push(v);
        }
        get(self.output, &vals)
    }

    pub fn eval_checked(&self, z: &crate::ghcore::Bits) -> Result<bool, PbpError> {
        if z.len != self.input_len() {
            return Err(PbpError::LengthMismatch { expected: self.input_len(), got: z.len });
        }
        Ok(self.eval(z.value))
    }

    /// A random formula of depth at most `max_depth` on `n + n` inputs.
    pub fn random<R: Rng>(rng: &mut R, n: usize, max_depth: usize) -> Circuit {
        fn grow<R: Rng>(rng: &mut R, n: usize, d: usize, gates: &mut Vec<Gate>) -> Wire {
            if d == 0 || rng.gen_bool(0.15) {
                return Wire::Input(rng.gen_range(1..=2 * n));
            }
            let g = match rng.gen_range(0..5) {
                0 => Gate::Not(grow(rng, n, d - 1, gates)),
                1 | 2 => Gate::And(grow(rng, n, d - 1, gates), grow(rng, n, d - 1, gates)),
                _ => Gate::Or(grow(rng, n, d - 1, gates), grow(rng, n, d - 1, gates)),
            };
            gates.push(g);
            Wire::Gate(gates.len() - 1)
        }
        let mut gates = Vec::new();
        let out = grow(rng, n, max_depth, &mut gates);
        Circuit::new(n, gates, out).expect("generated circuit is well formed")
    }

    pub fn to_netlist(&self) -> String {
        let name = |w: Wire| match w {
            Wire::Input(j) if j <= self.n => format!("x{j}"),
            Wire::Input(j) => format!("y{}", j - self.n),
            Wire::Gate(g) => format!("w{}", g + 1),
        };
        let mut out = format!("inputs n={}\n", self.n);
        for (i, g) in self.gates.iter().enumerate() {
            let rhs = match *g {
                Gate::And(a, b) => format!("AND {} {}", name(a), name(b)),
                Gate::Or(a, b) => format!("OR {} {}", name(a), name(b)),
                Gate::Not(a) => format!("NOT {}", name(a)),
            };
            let _ = writeln!(out, "w{} = {rhs}", i + 1);
        }
        let _ = writeln!(out, "out = {}", name(self.output));
        out
    }
}

fn input_ref(tok: &str) -> Option<(char, usize)> {
    let mut chars = tok.chars();
    let c = chars.next()?;
    if c != 'x' && c != 'y' {
        return None;
    }
    let idx: usize = chars.as_str().parse().ok()?;
    (idx >= 1).then_some((c, idx))
}

/// Parses the netlist format described in the module docs.
pub fn parse_netlist(text: &str) -> Result<Circuit, PbpError> {
    let perr = |line: usize, msg: String| PbpError::Parse { line, msg };
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();

    let mut declared_n = None;
    let mut max_idx = 0usize;
    for &(ln, l) in &lines {
        if let Some(rest) = l.strip_prefix("inputs") {
            let v = rest.trim().strip_prefix("n=").ok_or_else(|| perr(ln, "expected `inputs n=<n>`".into()))?;
            declared_n = Some(v.parse::<usize>().map_err(|_| perr(ln, format!("bad n {v:?}")))?);
        } else {
            for tok in l.split_whitespace() {
                if let Some((_, i)) = input_ref(tok) {
                    max_idx = max_idx.max(i);
                }
            }
        }
    }
    let n = declared_n.unwrap_or(max_idx);
    if max_idx > n {
        return Err(perr(0, format!("input index {max_idx} exceeds n={n}")));
    }

    let mut names: HashMap<String, Wire> = HashMap::new();
    let mut gates = Vec::new();
    let mut output = None;
    for &(ln, l) in &lines {
        if l.starts_with("inputs") {
            continue;
        }
        if output.is_some() {
            return Err(perr(ln, "nothing may follow the `out` line".into()));
        }
        let (lhs, rhs) = l.split_once('=').ok_or_else(|| perr(ln, "expected `<wire> = <expr>`".into()))?;
        let lhs = lhs.trim();
        let toks: Vec<&str> = rhs.split_whitespace().collect();
        let wire = |tok: &str| -> Result<Wire, PbpError> {
            if let Some((c, i)) = input_ref(tok) {
                return Ok(Wire::Input(if c == 'x' { i } else { n + i }));
            }
            names.get(tok).copied().ok_or_else(|| perr(ln, format!("undefined wire {tok:?}")))
        };
        if lhs == "out" {
            if toks.len() != 1 {
                return Err(perr(ln, "expected `out = <wire>`".into()));
            }
            output = Some(wire(toks[0])?);
            continue;
        }
        if input_ref(lhs).is_some() || names.contains_key(lhs) || lhs.is_empty() {
            return Err(perr(ln, format!("cannot define wire {lhs:?}")));
        }
        let gate = match toks.as_slice() {
            ["AND", a, b] => Gate::And(wire(a)?, wire(b)?),
            ["OR", a, b] => Gate::Or(wire(a)?, wire(b)?),
            ["NOT", a] => Gate::Not(wire(a)?),
            [op, ..] => return Err(perr(ln, format!("unsupported gate {op:?} or wrong arity"))),
            [] => return Err(perr(ln, "missing gate".into())),
        };
        gates.push(gate);
        names.insert(lhs.to_string(), Wire::Gate(gates.len() - 1));
    }
    let output = output.ok_or_else(|| perr(lines.last().map_or(0, |l| l.0), "missing `out = <wire>` line".into()))?;
    Circuit::new(n, gates, output)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn single_wire_and_and_gate() {
        let c = Circuit::new(1, vec![], Wire::Input(1)).unwrap();
        assert!(c.eval(0b10));
        assert_eq!(c.depth(), 0);
        let c = Circuit::new(1, vec![Gate::And(Wire::Input(1), Wire::Input(2))], Wire::Gate(0)).unwrap();
        assert!(!c.eval(0b10));
        assert!(c.eval(0b11));
        assert_eq!(c.depth(), 1);
    }

    #[test]
    fn rejects_forward_references() {
        assert!(Circuit::new(1, vec![Gate::Not(Wire::Gate(0))], Wire::Gate(0)).is_err());
        assert!(Circuit::new(1, vec![], Wire::Input(3)).is_err());
    }

    #[test]
    fn netlist_round_trip_preserves_truth_table() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let c = Circuit::random(&mut rng, 3, 4);
            let d = parse_netlist(&c.to_netlist()).unwrap();
            assert_eq!(d.depth(), c.depth());
            for z in 0..64 {
                assert_eq!(c.eval(z), d.eval(z));
            }
        }
    }

    #[test]
    fn random_depth_three_matches_hand_enumeration() {
        // (x1 AND y1) OR NOT (x2 AND y2), n = 2, z = x1 x2 y1 y2
        let text = "w1 = AND x1 y1\nw2 = AND x2 y2\nw3 = NOT w2\nw4 = OR w1 w3\nout = w4\n";
        let c = parse_netlist(text).unwrap();
        assert_eq!(c.n(), 2);
        assert_eq!(c.depth(), 3);
        for z in 0..16u64 {
            let (x1, x2, y1, y2) = (z >> 3 & 1, z >> 2 & 1, z >> 1 & 1, z & 1);
            let expect = (x1 & y1) == 1 || (x2 & y2) == 0;
            assert_eq!(c.eval(z), expect, "z={z:04b}");
        }
    }

    #[test]
    fn parse_errors_carry_lines() {
        assert!(matches!(parse_netlist("w1 = XOR x1 y1\nout = w1"), Err(PbpError::Parse { line: 1, .. })));
        assert!(matches!(parse_netlist("w1 = AND x1 w9\nout = w1"), Err(PbpError::Parse { line: 1, .. })));
        assert!(parse_netlist("w1 = AND x1 y1\n").is_err());
        assert!(parse_netlist("inputs n=1\nw1 = AND x2 y1\nout = w1").is_err());
    }
}
