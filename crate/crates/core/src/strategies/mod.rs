//! Explicit garden-hose strategies and composition operators.
//!
//! Pipe numbering is fixed per construction and documented on each builder.
//! All builders return rule-based games; call
//! [`GardenHoseGame::materialized`] for explicit tables.

mod majority;

use std::sync::Arc;

use crate::ghcore::{bit, BooleanFunction, GameError, GardenHoseGame, Matching, SingleInputFunction, Strategy};

pub use majority::{build_maj, build_maj_optimized};

/// Default cap on `n` for [`build_generic`].
pub const GENERIC_CAP: usize = 12;

fn need(cond: bool, msg: impl FnOnce() -> String) -> Result<(), GameError> {
    if cond {
        Ok(())
    } else {
        Err(GameError::Precondition(msg()))
    }
}

/// XOR on single bits with three pipes: Alice sends the water into pipe
/// `1 + x`, Bob joins pipe `1 + y` to pipe 3.
pub fn build_xor() -> GardenHoseGame {
    GardenHoseGame::new(
        1,
        3,
        Strategy::rule(|x| Matching::from_edges([(0, 1 + x as u32)])),
        Strategy::rule(|y| Matching::from_edges([(1 + y as u32, 3)])),
    )
    .expect("static construction")
}

/// Equality with `3n + 1` pipes.
///
/// Pipes: `R_i = i + 1` for `i = 0..=n`, and `Q^b_i = n + 2i + b` for
/// `i = 1..=n`, `b ∈ {0,1}`. Alice joins the tap to `R_0` and `R_i` to
/// `Q^{x_i}_i`; Bob joins `R_{i-1}` to `Q^{y_i}_i`. A mismatch at `i` leaves
/// `Q^{y_i}_i` open on Alice's side; otherwise the water leaves `R_n` at Bob.
pub fn build_eq(n: usize) -> Result<GardenHoseGame, GameError> {
    need(n >= 1, || "equality needs n >= 1".into())?;
    need(n <= crate::ghcore::MAX_BITS, || format!("n={n} too large"))?;
    let r = |i: usize| i as u32 + 1;
    let q = move |i: usize, b: bool| (n + 2 * i + b as usize) as u32;
    let alice = Strategy::rule(move |x| {
        let mut m = Matching::from_edges([(0, r(0))]);
        for i in 1..=n {
            m.push(r(i), q(i, bit(x, n, i)));
        }
        m
    });
    let bob = Strategy::rule(move |y| {
        Matching::from_edges((1..=n).map(|i| (r(i - 1), q(i, bit(y, n, i)))))
    });
    GardenHoseGame::new(n, 3 * n as u32 + 1, alice, bob)
}

/// Inner product mod 2 with `4n + 1` pipes.
///
/// Per index `i` there are pipes `Q^0_i, Q^1_i, R^0_i, R^1_i`
/// (`4(i-1) + 1 ..= 4i`) and one final pipe `End = 4n + 1`. The water runs
/// through `Q^b`/`R^b` while the running parity is `b`; Bob crosses the
/// pair when `y_i = 1`. Alice only routes through indices with `x_i = 1`:
/// `R^b_i` to `Q^b_k` for the next such `k`, and at the last one she leaves
/// `R^0` open and joins `R^1` to `End`. With `x = 0^n` the tap stays
/// unconnected.
pub fn build_ip(n: usize) -> Result<GardenHoseGame, GameError> {
    need(n >= 1, || "inner product needs n >= 1".into())?;
    need(n <= crate::ghcore::MAX_BITS, || format!("n={n} too large"))?;
    let base = |i: usize| 4 * (i as u32 - 1);
    let q = move |i: usize, b: u32| base(i) + 1 + b;
    let r = move |i: usize, b: u32| base(i) + 3 + b;
    let end = 4 * n as u32 + 1;
    let alice = Strategy::rule(move |x| {
        let ones: Vec<usize> = (1..=n).filter(|&i| bit(x, n, i)).collect();
        let mut m = Matching::empty();
        if let Some(&first) = ones.first() {
            m.push(0, q(first, 0));
        }
        for w in ones.windows(2) {
            m.push(r(w[0], 0), q(w[1], 0));
            m.push(r(w[0], 1), q(w[1], 1));
        }
        if let Some(&last) = ones.last() {
            m.push(r(last, 1), end);
        }
        m
    });
    let bob = Strategy::rule(move |y| {
        let mut m = Matching::empty();
        for i in 1..=n {
            let flip = bit(y, n, i) as u32;
            m.push(q(i, 0), r(i, flip));
            m.push(q(i, 1), r(i, 1 - flip));
        }
        m
    });
    GardenHoseGame::new(n, end, alice, bob)
}

/// The `2^n + 1` strategy that works for every function.
///
/// Alice sends the water into pipe `x + 1`. For each `y`, Bob pairs up the
/// pipes of the rows `a` with `f(a, y) = 0` in increasing order, using the
/// reserve pipe `2^n + 1` for an odd leftover.
pub fn build_generic(f: &BooleanFunction) -> Result<GardenHoseGame, GameError> {
    build_generic_capped(f, GENERIC_CAP)
}

pub fn build_generic_capped(f: &BooleanFunction, cap: usize) -> Result<GardenHoseGame, GameError> {
    let n = f.n();
    if n > cap {
        return Err(GameError::TooLarge { what: "generic strategy", n, cap });
    }
    let rows = 1u64 << n;
    let reserve = rows as u32 + 1;
    let alice: Vec<Matching> = (0..rows).map(|x| Matching::from_edges([(0, x as u32 + 1)])).collect();
    let bob: Vec<Matching> = (0..rows)
        .map(|y| {
            let zeros: Vec<u32> = (0..rows).filter(|&a| !f.value(a, y)).map(|a| a as u32 + 1).collect();
            let mut m = Matching::from_edges(zeros.chunks_exact(2).map(|c| (c[0], c[1])));
            if zeros.len() % 2 == 1 {
                m.push(*zeros.last().unwrap(), reserve);
            }
            m
        })
        .collect();
    GardenHoseGame::new(n, reserve, Strategy::Table(alice), Strategy::Table(bob))
}

/// A map `{0,1}^input_len → {0,1}^output_len` given as a table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalMap {
    input_len: usize,
    output_len: usize,
    table: Arc<Vec<u64>>,
}

impl LocalMap {
    pub fn new(input_len: usize, output_len: usize, table: Vec<u64>) -> Result<Self, GameError> {
        need(table.len() == 1 << input_len, || {
            format!("map table has {} entries, expected {}", table.len(), 1u64 << input_len)
        })?;
        need(table.iter().all(|&v| v >> output_len == 0), || {
            format!("map value outside {{0,1}}^{output_len}")
        })?;
        Ok(LocalMap { input_len, output_len, table: Arc::new(table) })
    }

    pub fn from_fn(input_len: usize, output_len: usize, f: impl Fn(u64) -> u64) -> Result<Self, GameError> {
        Self::new(input_len, output_len, (0..1u64 << input_len).map(f).collect())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |v| v).expect("identity is well formed")
    }

    pub fn apply(&self, v: u64) -> u64 {
        self.table[v as usize]
    }

    pub fn input_len(&self) -> usize {
        self.input_len
    }

    pub fn output_len(&self) -> usize {
        self.output_len
    }
}

/// Local pre-processing: a game of the same size computing
/// `f(x, y) = g(alpha(x), beta(y))`.
pub fn preprocess(g: &GardenHoseGame, alpha: &LocalMap, beta: &LocalMap) -> Result<GardenHoseGame, GameError> {
    need(alpha.output_len == g.n() && beta.output_len == g.n(), || {
        format!(
            "maps land in {{0,1}}^{} and {{0,1}}^{}, game expects {{0,1}}^{}",
            alpha.output_len,
            beta.output_len,
            g.n()
        )
    })?;
    need(alpha.input_len == beta.input_len, || "alpha and beta must share an input length".into())?;
    let (ga, gb) = (g.alice_strategy().clone(), g.bob_strategy().clone());
    let (a, b) = (alpha.clone(), beta.clone());
    GardenHoseGame::new(
        alpha.input_len,
        g.size(),
        Strategy::rule(move |x| ga.matching(a.apply(x)).into_owned()),
        Strategy::rule(move |y| gb.matching(b.apply(y)).into_owned()),
    )
}

/// The two-party function `f(x, y) = g(x ⊕ y)`.
pub fn otp_encode(g: &SingleInputFunction) -> Result<BooleanFunction, GameError> {
    BooleanFunction::from_fn(g.n(), |x, y| g.value(x ^ y))
}
