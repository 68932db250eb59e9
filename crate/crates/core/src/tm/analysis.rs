//! Empirical reversibility / obliviousness checks and the sets of
//! configurations seen when the input head crosses between `x` and `y`.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;

use super::exec::{step, trace, Configuration, InputTape, Trace};
use super::machine::TmSpec;
use super::TmError;

/// Largest `n` for which the exhaustive checks run (`2^(2n)` inputs).
pub const MAX_CHECK_N: usize = 6;

/// Two distinct configurations with the same successor on input `(x, y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Collision {
    pub x: u64,
    pub y: u64,
    pub first: Configuration,
    pub second: Configuration,
    pub successor: Configuration,
}

/// Input `(x, y)` moves its input head differently from `(0, 0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeadDivergence {
    pub x: u64,
    pub y: u64,
    /// First step index at which the positions differ (or one run ended).
    pub step: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub inputs: usize,
    /// Distinct configurations observed over all runs.
    pub universe: usize,
    pub reversibility: Option<Collision>,
    pub obliviousness: Option<HeadDivergence>,
}

impl CheckReport {
    pub fn ok(&self) -> bool {
        self.reversibility.is_none() && self.obliviousness.is_none()
    }
}

type Traces = Vec<((u64, u64), Trace)>;

fn all_traces(m: &TmSpec) -> Result<Traces, TmError> {
    if m.n > MAX_CHECK_N {
        return Err(TmError::TooLarge { n: m.n, cap: MAX_CHECK_N });
    }
    let side = 1u64 << m.n;
    (0..side * side)
        .into_par_iter()
        .map(|z| {
            let (x, y) = (z / side, z % side);
            trace(m, x, y).map(|t| ((x, y), t))
        })
        .collect()
}

/// Runs the machine on every input of length `2n`.
///
/// Reversibility is tested on the universe `U` of all configurations seen
/// in any run: for each input, the step function restricted to `U` must be
/// injective. Obliviousness requires every run to move the input head
/// exactly like the run on `(0, 0)`. The first violation of each kind (in
/// input order) is reported.
pub fn check_reversible_oblivious(m: &TmSpec) -> Result<CheckReport, TmError> {
    let traces = all_traces(m)?;
    let universe: BTreeSet<&Configuration> = traces.iter().flat_map(|(_, t)| t.configs.iter()).collect();
    let live: Vec<&Configuration> = universe.iter().copied().filter(|c| !m.is_halting(c.state)).collect();

    let reversibility = traces.par_iter().find_map_first(|&((x, y), _)| {
        let tape = InputTape { n: m.n, x, y };
        let mut seen: HashMap<Configuration, &Configuration> = HashMap::with_capacity(live.len());
        for &c in &live {
            // configurations from other inputs may be stuck on this one
            let Ok(next) = step(m, &tape, c) else { continue };
            if let Some(prev) = seen.insert(next.clone(), c) {
                return Some(Collision { x, y, first: prev.clone(), second: c.clone(), successor: next });
            }
        }
        None
    });

    let reference = traces[0].1.head_positions();
    let obliviousness = traces.iter().find_map(|&((x, y), ref t)| {
        let h = t.head_positions();
        (h != reference).then(|| HeadDivergence {
            x,
            y,
            step: h.iter().zip(&reference).position(|(a, b)| a != b).unwrap_or(h.len().min(reference.len())),
        })
    });

    Ok(CheckReport { inputs: traces.len(), universe: universe.len(), reversibility, obliviousness })
}

/// `C_A`: configurations with the input head on `n` having come from
/// `n + 1`; `C_B`: head on `n + 1` having come from `n`. Both sorted and
/// duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CrossingSets {
    pub c_a: Vec<Configuration>,
    pub c_b: Vec<Configuration>,
}

impl CrossingSets {
    pub fn index_a(&self, c: &Configuration) -> Option<usize> {
        self.c_a.binary_search(c).ok()
    }

    pub fn index_b(&self, c: &Configuration) -> Option<usize> {
        self.c_b.binary_search(c).ok()
    }
}

/// Step indices `t` at which configuration `t` of the trace has just
/// crossed the boundary, with the direction (`true` = into `y`).
pub fn crossings(t: &Trace, n: usize) -> Vec<(usize, bool)> {
    t.configs
        .windows(2)
        .enumerate()
        .filter_map(|(i, w)| match (w[0].input_head, w[1].input_head) {
            (a, b) if a == n && b == n + 1 => Some((i + 1, true)),
            (a, b) if a == n + 1 && b == n => Some((i + 1, false)),
            _ => None,
        })
        .collect()
}

/// Crossing configurations over all `2^(2n)` inputs.
pub fn crossing_sets(m: &TmSpec) -> Result<CrossingSets, TmError> {
    let traces = all_traces(m)?;
    let mut a = BTreeSet::new();
    let mut b = BTreeSet::new();
    for (_, t) in &traces {
        for (i, into_y) in crossings(t, m.n) {
            let c = t.configs[i].clone();
            if into_y {
                b.insert(c);
            } else {
                a.insert(c);
            }
        }
    }
    Ok(CrossingSets { c_a: a.into_iter().collect(), c_b: b.into_iter().collect() })
}
