use super::bits::{bit, Bits};
use super::GameError;

/// Largest `n` for which a two-party truth table is materialized.
pub const MAX_TABLE_BITS: usize = 12;

/// A two-party Boolean function `f: {0,1}^n × {0,1}^n → {0,1}`, stored as a
/// row-major truth table (row `x`, column `y`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BooleanFunction {
    n: usize,
    words: Vec<u64>,
}

impl std::fmt::Debug for BooleanFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BooleanFunction(n={})", self.n)
    }
}

impl BooleanFunction {
    pub fn from_fn(n: usize, f: impl Fn(u64, u64) -> bool) -> Result<Self, GameError> {
        if n > MAX_TABLE_BITS {
            return Err(GameError::TooLarge { what: "truth table", n, cap: MAX_TABLE_BITS });
        }
        let cells = 1usize << (2 * n);
        let mut words = vec![0u64; cells.div_ceil(64)];
        for x in 0..1u64 << n {
            for y in 0..1u64 << n {
                if f(x, y) {
                    let i = ((x << n) | y) as usize;
                    words[i / 64] |= 1 << (i % 64);
                }
            }
        }
        Ok(BooleanFunction { n, words })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn value(&self, x: u64, y: u64) -> bool {
        let i = ((x << self.n) | y) as usize;
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn eval(&self, x: &Bits, y: &Bits) -> Result<bool, GameError> {
        if x.len != self.n || y.len != self.n {
            return Err(GameError::LengthMismatch { expected: self.n, x: x.len, y: y.len });
        }
        Ok(self.value(x.value, y.value))
    }

    /// Row `x` of the truth table as packed bits over `y`.
    pub fn row(&self, x: u64) -> Vec<u64> {
        let w = 1usize << self.n;
        let mut out = vec![0u64; w.div_ceil(64)];
        for y in 0..w {
            if self.value(x, y as u64) {
                out[y / 64] |= 1 << (y % 64);
            }
        }
        out
    }

    /// Column `y` of the truth table as packed bits over `x`.
    pub fn column(&self, y: u64) -> Vec<u64> {
        let w = 1usize << self.n;
        let mut out = vec![0u64; w.div_ceil(64)];
        for x in 0..w {
            if self.value(x as u64, y) {
                out[x / 64] |= 1 << (x % 64);
            }
        }
        out
    }

    pub fn constant(n: usize, v: bool) -> Result<Self, GameError> {
        Self::from_fn(n, |_, _| v)
    }

    pub fn equality(n: usize) -> Result<Self, GameError> {
        Self::from_fn(n, |x, y| x == y)
    }

    pub fn inner_product(n: usize) -> Result<Self, GameError> {
        Self::from_fn(n, |x, y| (x & y).count_ones() % 2 == 1)
    }

    /// 1 iff at least `⌊n/2⌋ + 1` positions have `x_i = y_i = 1`.
    pub fn majority(n: usize) -> Result<Self, GameError> {
        Self::from_fn(n, move |x, y| (x & y).count_ones() as usize > n / 2)
    }

    pub fn xor(n: usize) -> Result<Self, GameError> {
        Self::from_fn(n, |x, y| (x ^ y).count_ones() % 2 == 1)
    }

    /// AND of all `2n` input bits.
    pub fn and(n: usize) -> Result<Self, GameError> {
        let full = (1u64 << n) - 1;
        Self::from_fn(n, move |x, y| x == full && y == full)
    }

    /// Looks up one of the named functions used by the CLI.
    pub fn named(name: &str, n: usize) -> Result<Self, GameError> {
        match name {
            "eq" => Self::equality(n),
            "ip" => Self::inner_product(n),
            "maj" => Self::majority(n),
            "xor" => Self::xor(n),
            "and" => Self::and(n),
            "zero" | "const0" => Self::constant(n, false),
            "one" | "const1" => Self::constant(n, true),
            other => Err(GameError::UnknownFunction(other.to_string())),
        }
    }

    /// Parses a truth-table file: `4^n` characters `0`/`1`, row-major in `x`.
    /// Whitespace is ignored; `n` is inferred from the length.
    pub fn parse_table(text: &str) -> Result<Self, GameError> {
        let cells: Vec<bool> = text
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(GameError::Parse { line: 0, msg: format!("unexpected character {other:?} in truth table") }),
            })
            .collect::<Result<_, _>>()?;
        let mut n = 0;
        while (1usize << (2 * n)) < cells.len() {
            n += 1;
        }
        if 1usize << (2 * n) != cells.len() {
            return Err(GameError::Parse {
                line: 0,
                msg: format!("truth table has {} cells, not a power of 4", cells.len()),
            });
        }
        Self::from_fn(n, |x, y| cells[((x << n) | y) as usize])
    }

    pub fn to_table_string(&self) -> String {
        let mut s = String::with_capacity(1 << (2 * self.n));
        for x in 0..1u64 << self.n {
            for y in 0..1u64 << self.n {
                s.push(if self.value(x, y) { '1' } else { '0' });
            }
            s.push('\n');
        }
        s
    }
}

/// A single-party Boolean function `g: {0,1}^n → {0,1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingleInputFunction {
    n: usize,
    table: Vec<bool>,
}

impl SingleInputFunction {
    pub fn from_fn(n: usize, g: impl Fn(u64) -> bool) -> Result<Self, GameError> {
        if n > 2 * MAX_TABLE_BITS {
            return Err(GameError::TooLarge { what: "single-input table", n, cap: 2 * MAX_TABLE_BITS });
        }
        Ok(SingleInputFunction { n, table: (0..1u64 << n).map(g).collect() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn value(&self, z: u64) -> bool {
        self.table[z as usize]
    }

    pub fn parity(n: usize) -> Result<Self, GameError> {
        Self::from_fn(n, |z| z.count_ones() % 2 == 1)
    }

    /// Bit `i` (1-based, MSB-first) of a `len`-bit value, for building rules.
    pub fn input_bit(z: u64, len: usize, i: usize) -> bool {
        bit(z, len, i)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_functions_small_cases() {
        let eq = BooleanFunction::equality(2).unwrap();
        assert!(eq.value(2, 2));
        assert!(!eq.value(2, 3));
        let ip = BooleanFunction::inner_product(2).unwrap();
        assert!(ip.value(0b11, 0b01));
        assert!(!ip.value(0b11, 0b11));
        let maj = BooleanFunction::majority(4).unwrap();
        // threshold 3
        assert!(!maj.value(0b1110, 0b0111));
        assert!(maj.value(0b1111, 0b0111));
    }

    #[test]
    fn table_round_trip() {
        let f = BooleanFunction::inner_product(2).unwrap();
        let g = BooleanFunction::parse_table(&f.to_table_string()).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn table_length_must_be_power_of_four() {
        assert!(BooleanFunction::parse_table("01101").is_err());
        assert!(BooleanFunction::parse_table("0110x").is_err());
    }

    #[test]
    fn cap_is_enforced() {
        assert!(BooleanFunction::constant(13, true).is_err());
    }
}
