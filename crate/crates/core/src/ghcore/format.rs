//! Text format for games.
//!
//! ```text
//! ghgame n=1 s=3
//! alice x=0: 0-1
//! alice x=1: 0-2
//! bob y=0: 1-3
//! bob y=1: 2-3
//! ```
//!
//! Every input of both players gets one block. Edges are comma separated and
//! may continue on the following lines; `#` starts a comment. The tap is
//! vertex `0`.

use std::fmt::Write as _;

use super::bits::{to_string, Bits};
use super::game::{GardenHoseGame, Strategy};
use super::matching::{Matching, Side};
use super::GameError;

fn perr(line: usize, msg: impl Into<String>) -> GameError {
    GameError::Parse { line, msg: msg.into() }
}

/// Serializes a game. Rule strategies are materialized.
pub fn write_game(game: &GardenHoseGame) -> String {
    let n = game.n();
    let mut out = String::new();
    let _ = writeln!(out, "ghgame n={} s={}", n, game.size());
    for x in 0..1u64 << n {
        let _ = writeln!(out, "alice x={}: {}", to_string(x, n), game.alice(x));
    }
    for y in 0..1u64 << n {
        let _ = writeln!(out, "bob y={}: {}", to_string(y, n), game.bob(y));
    }
    out
}

fn parse_kv(tok: &str, key: &str, line: usize) -> Result<usize, GameError> {
    tok.strip_prefix(key)
        .and_then(|v| v.strip_prefix('='))
        .ok_or_else(|| perr(line, format!("expected {key}=<value>, found {tok:?}")))?
        .parse()
        .map_err(|_| perr(line, format!("bad number in {tok:?}")))
}

fn parse_edges(text: &str, line: usize, into: &mut Matching) -> Result<(), GameError> {
    for tok in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (u, v) = tok.split_once('-').ok_or_else(|| perr(line, format!("bad edge {tok:?}")))?;
        let u: u32 = u.trim().parse().map_err(|_| perr(line, format!("bad vertex in {tok:?}")))?;
        let v: u32 = v.trim().parse().map_err(|_| perr(line, format!("bad vertex in {tok:?}")))?;
        into.push(u, v);
    }
    Ok(())
}

/// Parses a game, rejecting matching violations with the line number of the
/// offending block.
pub fn parse_game(text: &str) -> Result<GardenHoseGame, GameError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines.next().ok_or_else(|| perr(1, "empty game file"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 3 || toks[0] != "ghgame" {
        return Err(perr(hline, "expected header `ghgame n=<n> s=<s>`"));
    }
    let n = parse_kv(toks[1], "n", hline)?;
    let s = parse_kv(toks[2], "s", hline)?;
    if n > super::bits::MAX_BITS.min(20) {
        return Err(perr(hline, format!("n={n} too large for an explicit game file")));
    }
    let s = u32::try_from(s).map_err(|_| perr(hline, "s out of range"))?;

    let mut alice: Vec<Option<(usize, Matching)>> = vec![None; 1 << n];
    let mut bob: Vec<Option<(usize, Matching)>> = vec![None; 1 << n];
    let mut current: Option<(Side, usize)> = None;
    let mut last_line = hline;

    for (ln, l) in lines {
        last_line = ln;
        let block = l
            .strip_prefix("alice")
            .map(|r| (Side::Alice, r, "x="))
            .or_else(|| l.strip_prefix("bob").map(|r| (Side::Bob, r, "y=")));
        let rest = match block {
            Some((side, rest, key)) => {
                let rest = rest.trim_start();
                let rest = rest.strip_prefix(key).ok_or_else(|| perr(ln, format!("expected `{key}<bits>:`")))?;
                let (bits, edges) = rest.split_once(':').ok_or_else(|| perr(ln, "missing `:` after input"))?;
                let b: Bits = bits.parse().map_err(|_| perr(ln, format!("bad input bits {bits:?}")))?;
                if b.len != n {
                    return Err(perr(ln, format!("input {bits} has length {}, expected {n}", b.len)));
                }
                let table = if side == Side::Alice { &mut alice } else { &mut bob };
                let slot = &mut table[b.value as usize];
                if slot.is_some() {
                    return Err(perr(ln, format!("duplicate block for input {bits}")));
                }
                *slot = Some((ln, Matching::empty()));
                current = Some((side, b.value as usize));
                edges
            }
            None => l,
        };
        let (side, idx) = current.ok_or_else(|| perr(ln, "edges before any alice/bob block"))?;
        let table = if side == Side::Alice { &mut alice } else { &mut bob };
        let (_, m) = table[idx].as_mut().expect("block opened above");
        parse_edges(rest, ln, m)?;
    }

    let finish = |table: Vec<Option<(usize, Matching)>>, side: Side| -> Result<Vec<Matching>, GameError> {
        table
            .into_iter()
            .enumerate()
            .map(|(i, slot)| {
                let (ln, m) = slot.ok_or_else(|| {
                    perr(last_line, format!("missing {} block for input {}", side_name(side), to_string(i as u64, n)))
                })?;
                let faults = match side {
                    Side::Alice => m.faults(0, s),
                    Side::Bob => m.faults(1, s),
                };
                if let Some(f) = faults.first() {
                    return Err(perr(ln, f.to_string()));
                }
                Ok(m)
            })
            .collect()
    };
    let alice = finish(alice, Side::Alice)?;
    let bob = finish(bob, Side::Bob)?;
    GardenHoseGame::new(n, s, Strategy::Table(alice), Strategy::Table(bob))
}

fn side_name(side: Side) -> &'static str {
    match side {
        Side::Alice => "alice",
        Side::Bob => "bob",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ghcore::validate_game;

    const XOR: &str = "ghgame n=1 s=3\nalice x=0: 0-1\nalice x=1: 0-2\nbob y=0: 1-3\nbob y=1: 2-3\n";

    #[test]
    fn parses_and_writes_back() {
        let g = parse_game(XOR).unwrap();
        assert_eq!(g.size(), 3);
        assert!(validate_game(&g).is_empty());
        assert_eq!(write_game(&g), XOR);
    }

    #[test]
    fn edges_may_continue_on_next_line() {
        let text = "ghgame n=1 s=4\nalice x=0: 0-1,\n  2-3\nalice x=1:\nbob y=0:\nbob y=1: 1-4 # comment\n";
        let g = parse_game(text).unwrap();
        assert_eq!(g.alice(0).len(), 2);
        assert!(g.alice(1).is_empty());
    }

    #[test]
    fn degree_violation_reports_block_line() {
        let text = "ghgame n=1 s=3\nalice x=0: 0-1\nalice x=1: 0-2,2-3\nbob y=0:\nbob y=1:\n";
        match parse_game(text) {
            Err(GameError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bob_tap_edge_rejected() {
        let text = "ghgame n=1 s=3\nalice x=0:\nalice x=1:\nbob y=0: 0-1\nbob y=1:\n";
        assert!(matches!(parse_game(text), Err(GameError::Parse { line: 4, .. })));
    }

    #[test]
    fn missing_and_duplicate_blocks() {
        assert!(parse_game("ghgame n=1 s=1\nalice x=0:\nbob y=0:\nbob y=1:\n").is_err());
        assert!(parse_game("ghgame n=1 s=1\nalice x=0:\nalice x=0:\nalice x=1:\nbob y=0:\nbob y=1:\n").is_err());
        assert!(parse_game("nope").is_err());
    }
}
