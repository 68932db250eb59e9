use std::borrow::Cow;
use std::fmt;
use std::sync::Arc;

use super::bits;
use super::matching::{Matching, MatchingFault, Side};
use super::GameError;

type Rule = Arc<dyn Fn(u64) -> Matching + Send + Sync>;

/// One player's plumbing: a matching for every input string.
///
/// Either an explicit table indexed by the input value, or a rule evaluated
/// on demand. Rules keep 2^n-sized strategies cheap until someone actually
/// enumerates them.
#[derive(Clone)]
pub enum Strategy {
    Table(Vec<Matching>),
    Rule(Rule),
}

impl Strategy {
    pub fn rule<F>(f: F) -> Self
    where
        F: Fn(u64) -> Matching + Send + Sync + 'static,
    {
        Strategy::Rule(Arc::new(f))
    }

    pub fn matching(&self, input: u64) -> Cow<'_, Matching> {
        match self {
            Strategy::Table(t) => Cow::Borrowed(&t[input as usize]),
            Strategy::Rule(f) => Cow::Owned(f(input)),
        }
    }

    pub fn materialize(&self, n: usize) -> Vec<Matching> {
        (0..1u64 << n).map(|v| self.matching(v).into_owned()).collect()
    }
}

impl fmt::Debug for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::Table(t) => f.debug_tuple("Table").field(&t.len()).finish(),
            Strategy::Rule(_) => f.write_str("Rule(..)"),
        }
    }
}

/// A garden-hose game of size `s` on `n`-bit inputs.
///
/// Alice's vertices are `0..=s` where `0` is the tap; Bob's are `1..=s`.
/// Pipe `i` joins Alice's vertex `i` to Bob's vertex `i`.
#[derive(Debug, Clone)]
pub struct GardenHoseGame {
    n: usize,
    s: u32,
    alice: Strategy,
    bob: Strategy,
}

/// One invariant violation found by [`validate_game`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub side: Side,
    pub input: u64,
    pub fault: MatchingFault,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} input {}: {}", self.side, self.input, self.fault)
    }
}

impl GardenHoseGame {
    /// Builds a game without validating it; see [`validate_game`].
    pub fn new(n: usize, s: u32, alice: Strategy, bob: Strategy) -> Result<Self, GameError> {
        if n > bits::MAX_BITS {
            return Err(GameError::InputTooLong(n));
        }
        for (side, st) in [(Side::Alice, &alice), (Side::Bob, &bob)] {
            if let Strategy::Table(t) = st {
                if t.len() != 1usize << n {
                    return Err(GameError::TableSize { side, expected: 1 << n, got: t.len() });
                }
            }
        }
        Ok(GardenHoseGame { n, s, alice, bob })
    }

    /// Same as [`GardenHoseGame::new`] followed by a full validation.
    pub fn checked(n: usize, s: u32, alice: Strategy, bob: Strategy) -> Result<Self, GameError> {
        let g = Self::new(n, s, alice, bob)?;
        let report = validate_game(&g);
        match report.into_iter().next() {
            None => Ok(g),
            Some(v) => Err(GameError::Invalid(v)),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of pipes.
    pub fn size(&self) -> u32 {
        self.s
    }

    pub fn alice(&self, x: u64) -> Cow<'_, Matching> {
        self.alice.matching(x)
    }

    pub fn bob(&self, y: u64) -> Cow<'_, Matching> {
        self.bob.matching(y)
    }

    pub fn alice_strategy(&self) -> &Strategy {
        &self.alice
    }

    pub fn bob_strategy(&self) -> &Strategy {
        &self.bob
    }

    /// Replaces rule-based strategies by explicit tables.
    pub fn materialized(&self) -> GardenHoseGame {
        GardenHoseGame {
            n: self.n,
            s: self.s,
            alice: Strategy::Table(self.alice.materialize(self.n)),
            bob: Strategy::Table(self.bob.materialize(self.n)),
        }
    }

    /// Faults of Alice's matching at `x` (vertices `0..=s`).
    pub fn alice_faults(&self, x: u64) -> Vec<MatchingFault> {
        self.alice(x).faults(0, self.s)
    }

    /// Faults of Bob's matching at `y` (vertices `1..=s`).
    pub fn bob_faults(&self, y: u64) -> Vec<MatchingFault> {
        self.bob(y).faults(1, self.s)
    }

    /// True when both games have the same size and identical matchings on
    /// every input.
    pub fn same_plumbing(&self, other: &GardenHoseGame) -> bool {
        self.n == other.n
            && self.s == other.s
            && (0..1u64 << self.n).all(|v| {
                self.alice(v) == other.alice(v) && self.bob(v) == other.bob(v)
            })
    }
}

/// Checks the matching invariants for every input of both players.
///
/// Returns an empty list when the game is valid. Violations come out ordered
/// by side (Alice first), then input, then vertex.
pub fn validate_game(game: &GardenHoseGame) -> Vec<Violation> {
    let mut out = Vec::new();
    for x in 0..1u64 << game.n {
        out.extend(game.alice_faults(x).into_iter().map(|fault| Violation { side: Side::Alice, input: x, fault }));
    }
    for y in 0..1u64 << game.n {
        out.extend(game.bob_faults(y).into_iter().map(|fault| Violation { side: Side::Bob, input: y, fault }));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn empty_game(n: usize, s: u32) -> GardenHoseGame {
        GardenHoseGame::new(n, s, Strategy::rule(|_| Matching::empty()), Strategy::rule(|_| Matching::empty()))
            .unwrap()
    }

    #[test]
    fn empty_matchings_are_valid() {
        assert!(validate_game(&empty_game(2, 3)).is_empty());
    }

    #[test]
    fn degree_two_violation_reports_input_and_vertex() {
        let alice = Strategy::Table(vec![Matching::from_edges([(0, 1), (1, 2)]), Matching::empty()]);
        let g = GardenHoseGame::new(1, 2, alice, Strategy::rule(|_| Matching::empty())).unwrap();
        let v = validate_game(&g);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].input, 0);
        assert_eq!(v[0].side, Side::Alice);
        assert_eq!(v[0].fault, MatchingFault::Degree(1));
    }

    #[test]
    fn bob_cannot_touch_the_tap() {
        let bob = Strategy::rule(|_| Matching::from_edges([(0, 1)]));
        let g = GardenHoseGame::new(1, 1, Strategy::rule(|_| Matching::empty()), bob).unwrap();
        let v = validate_game(&g);
        assert_eq!(v.len(), 2);
        assert!(v.iter().all(|v| v.side == Side::Bob && v.fault == MatchingFault::OutOfRange(0)));
    }

    #[test]
    fn table_length_must_match_input_length() {
        let err = GardenHoseGame::new(2, 1, Strategy::Table(vec![Matching::empty()]), Strategy::rule(|_| Matching::empty()));
        assert!(matches!(err, Err(GameError::TableSize { .. })));
    }
}
