//! Exact garden-hose complexity of functions on one or two bits per player.
//!
//! For each size `s` every Alice matching `a` gets a bitmask over Bob's
//! matchings recording where the water exits. A choice of `a_x` for every
//! `x` is completable iff every column `y` leaves some Bob matching `b`
//! consistent with `f(·, y)`; the depth-first search keeps these column
//! masks and backtracks as soon as one becomes empty. Pipe relabelings map
//! games to games, so Alice's matching for `x = 0` only ranges over one
//! representative per orbit (determined by whether the tap is connected and
//! by the number of hoses).

use rayon::prelude::*;

use crate::ghcore::{walk, BooleanFunction, GameError, GardenHoseGame, Matching, Side, Strategy};

/// Largest size searched: Bob has 76 matchings on 6 pipes, which still
/// fits the 128-bit masks.
pub const SEARCH_CAP: u32 = 6;
const MAX_N: usize = 2;

#[derive(Debug, Clone)]
pub enum GhSearch {
    Exact { size: u32, witness: GardenHoseGame },
    /// No game with at most `cap` pipes exists.
    AtLeast(u32),
}

impl GhSearch {
    pub fn size(&self) -> Option<u32> {
        match self {
            GhSearch::Exact { size, .. } => Some(*size),
            GhSearch::AtLeast(_) => None,
        }
    }
}

/// All matchings on the given vertices, in a fixed recursive order.
pub fn matchings_on(vertices: &[u32]) -> Vec<Matching> {
    fn go(rest: &[u32], acc: &mut Vec<(u32, u32)>, out: &mut Vec<Matching>) {
        let Some((&v, tail)) = rest.split_first() else {
            out.push(Matching::from_edges(acc.iter().copied()));
            return;
        };
        go(tail, acc, out);
        for (i, &w) in tail.iter().enumerate() {
            let mut remaining = tail.to_vec();
            remaining.remove(i);
            acc.push((v, w));
            go(&remaining, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(vertices, &mut Vec::new(), &mut out);
    out
}

struct Level {
    alice: Vec<Matching>,
    bob: Vec<Matching>,
    /// `exits_b[a]` bit `b`: water exits on Bob's side.
    exits_b: Vec<u128>,
    all_bob: u128,
    reps: Vec<usize>,
}

impl Level {
    fn new(s: u32) -> Level {
        let alice = matchings_on(&(0..=s).collect::<Vec<_>>());
        let bob = matchings_on(&(1..=s).collect::<Vec<_>>());
        assert!(bob.len() <= 128);
        let bob_partners: Vec<Vec<u32>> = bob.iter().map(|b| b.partners(s)).collect();
        let exits_b = alice
            .iter()
            .map(|a| {
                let ap = a.partners(s);
                bob_partners
                    .iter()
                    .enumerate()
                    .filter(|(_, bp)| walk(&ap, bp, |_| {}) == Side::Bob)
                    .fold(0u128, |m, (i, _)| m | 1 << i)
            })
            .collect();
        let mut reps = Vec::new();
        let mut seen = Vec::new();
        for (i, a) in alice.iter().enumerate() {
            let sig = (a.partner(0).is_some(), a.len());
            if !seen.contains(&sig) {
                seen.push(sig);
                reps.push(i);
            }
        }
        let all_bob = if bob.len() == 128 { u128::MAX } else { (1u128 << bob.len()) - 1 };
        Level { alice, bob, exits_b, all_bob, reps }
    }

    fn restrict(&self, cols: &[u128], f: &BooleanFunction, x: u64, a: usize) -> Option<Vec<u128>> {
        let m = self.exits_b[a];
        let next: Vec<u128> = cols
            .iter()
            .enumerate()
            .map(|(y, &c)| c & if f.value(x, y as u64) { m } else { !m & self.all_bob })
            .collect();
        next.iter().all(|&c| c != 0).then_some(next)
    }

    fn dfs(&self, f: &BooleanFunction, x: u64, cols: Vec<u128>, chosen: &mut Vec<usize>) -> Option<Vec<u128>> {
        if x == 1 << f.n() {
            return Some(cols);
        }
        for a in 0..self.alice.len() {
            if let Some(next) = self.restrict(&cols, f, x, a) {
                chosen.push(a);
                if let Some(done) = self.dfs(f, x + 1, next, chosen) {
                    return Some(done);
                }
                chosen.pop();
            }
        }
        None
    }

    fn solve(&self, f: &BooleanFunction, s: u32) -> Option<GardenHoseGame> {
        let start = vec![self.all_bob; 1 << f.n()];
        let (chosen, cols) = self.reps.par_iter().find_map_first(|&a0| {
            let cols = self.restrict(&start, f, 0, a0)?;
            let mut chosen = vec![a0];
            let done = self.dfs(f, 1, cols, &mut chosen)?;
            Some((chosen, done))
        })?;
        let alice = chosen.iter().map(|&a| self.alice[a].clone()).collect();
        let bob = cols.iter().map(|c| self.bob[c.trailing_zeros() as usize].clone()).collect();
        Some(GardenHoseGame::new(f.n(), s, Strategy::Table(alice), Strategy::Table(bob)).expect("tables sized by n"))
    }
}

/// [`exhaustive_gh_capped`] with the default cap.
pub fn exhaustive_gh(f: &BooleanFunction) -> Result<GhSearch, GameError> {
    exhaustive_gh_capped(f, SEARCH_CAP)
}

/// Smallest `s ≤ cap` admitting a game for `f`, with a witness.
pub fn exhaustive_gh_capped(f: &BooleanFunction, cap: u32) -> Result<GhSearch, GameError> {
    if f.n() > MAX_N {
        return Err(GameError::TooLarge { what: "exhaustive search", n: f.n(), cap: MAX_N });
    }
    if cap > SEARCH_CAP {
        return Err(GameError::Precondition(format!("search cap {cap} exceeds {SEARCH_CAP}")));
    }
    for s in 0..=cap {
        if let Some(witness) = Level::new(s).solve(f, s) {
            return Ok(GhSearch::Exact { size: s, witness });
        }
    }
    Ok(GhSearch::AtLeast(cap + 1))
}
