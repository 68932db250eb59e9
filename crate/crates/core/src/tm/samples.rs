//! Hand-built reversible, input-oblivious machines, generated per `n`, plus
//! two deliberately broken ones for exercising the checks.

use super::machine::{parse_tm, TmSpec};
use super::TmError;

pub const SAMPLE_NAMES: &[&str] = &["accept", "parity", "zigzag", "eq", "merge", "branch"];

fn header(name: &str, n: usize, states: &str, tapes: &[String]) -> String {
    let mut s = format!("machine {name}\nn {n}\nstates {states}\naccept acc\nreject rej\n");
    for t in tapes {
        s.push_str(&format!("tape {t}\n"));
    }
    s
}

fn build(text: String) -> TmSpec {
    parse_tm(&text).expect("sample machines are well formed")
}

/// Accepts immediately, never leaving the left end marker.
pub fn always_accept(n: usize) -> TmSpec {
    build(header("accept", n, "q acc rej", &[]) + "start q\nq * -> acc S\n")
}

/// Parity of `x ‖ y` in a single work cell, one left-to-right sweep.
pub fn parity(n: usize) -> TmSpec {
    build(
        header("parity", n, "s acc rej", &["0".into()])
            + "start s\n\
               s < * -> s R * S\n\
               s 0 * -> s R * S\n\
               s 1 0 -> s R 1 S\n\
               s 1 1 -> s R 0 S\n\
               s > 1 -> acc S * S\n\
               s > 0 -> rej S * S\n",
    )
}

/// Parity again, but the machine sweeps back to `<` before deciding, so
/// the head crosses the boundary in both directions.
pub fn zigzag_parity(n: usize) -> TmSpec {
    build(
        header("zigzag", n, "r l acc rej", &["0".into()])
            + "start r\n\
               r < * -> r R * S\n\
               r 0 * -> r R * S\n\
               r 1 0 -> r R 1 S\n\
               r 1 1 -> r R 0 S\n\
               r > * -> l L * S\n\
               l 0 * -> l L * S\n\
               l 1 * -> l L * S\n\
               l < 1 -> acc S * S\n\
               l < 0 -> rej S * S\n",
    )
}

/// Equality. Copies `x` into `n` work cells (XOR into zeros), rewinds the
/// work head while the input head waits on `y₁`, then XORs `y` in. State
/// `bad` is entered at the first mismatch; it can only be re-entered from
/// itself when some earlier cell already holds a 1, which keeps the step
/// function injective on reachable configurations.
pub fn equality(n: usize) -> TmSpec {
    let tape = format!("#{}#", "0".repeat(n));
    build(
        header("eq", n, "ax rw ok bad acc rej", &[tape])
            + &format!("budget {}\n", 4 * n + 10)
            + "start ax\n\
               ax < # -> ax R * R\n\
               ax 0 0 -> ax R 0 R\n\
               ax 0 1 -> ax R 1 R\n\
               ax 1 0 -> ax R 1 R\n\
               ax 1 1 -> ax R 0 R\n\
               ax * # -> rw S * L\n\
               rw * 0 -> rw S * L\n\
               rw * 1 -> rw S * L\n\
               rw * # -> ok S * R\n\
               ok 0 0 -> ok R 0 R\n\
               ok 1 1 -> ok R 0 R\n\
               ok 0 1 -> bad R 1 R\n\
               ok 1 0 -> bad R 1 R\n\
               bad 0 0 -> bad R 0 R\n\
               bad 0 1 -> bad R 1 R\n\
               bad 1 0 -> bad R 1 R\n\
               bad 1 1 -> bad R 0 R\n\
               ok > # -> acc S * S\n\
               bad > # -> rej S * S\n",
    )
}

/// Not reversible (`n = 1`): states `a` and `b` both step to `m` when
/// coming back from `y`, so Bob would wire two pipes into one.
pub fn merging() -> TmSpec {
    build(
        header("merge", 1, "s a b m acc rej", &[])
            + "start s\n\
               s < -> s R\n\
               s 0 -> a R\n\
               s 1 -> b R\n\
               a * -> m L\n\
               b * -> m L\n\
               m * -> acc S\n",
    )
}

/// Not input-oblivious (`n = 1`): the head only visits `y` when `x = 1`.
pub fn branching() -> TmSpec {
    build(
        header("branch", 1, "s t acc rej", &[])
            + "start s\n\
               s < -> s R\n\
               s 0 -> acc S\n\
               s 1 -> t R\n\
               t * -> acc S\n",
    )
}

pub fn sample(name: &str, n: usize) -> Result<TmSpec, TmError> {
    let fixed = |m: TmSpec| {
        if n == 1 {
            Ok(m)
        } else {
            Err(TmError::Invalid(format!("sample {name:?} exists only for n = 1")))
        }
    };
    if n == 0 {
        return Err(TmError::Invalid("n must be at least 1".into()));
    }
    match name {
        "accept" => Ok(always_accept(n)),
        "parity" => Ok(parity(n)),
        "zigzag" => Ok(zigzag_parity(n)),
        "eq" => Ok(equality(n)),
        "merge" => fixed(merging()),
        "branch" => fixed(branching()),
        _ => Err(TmError::Invalid(format!("unknown sample {name:?}; known: {}", SAMPLE_NAMES.join(", ")))),
    }
}
