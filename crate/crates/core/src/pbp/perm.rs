use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use super::PbpError;

/// A permutation of `{1, ..., 5}`.
///
/// Products read left to right: `(a * b)(k) = b(a(k))`, so `a` acts first.
/// This matches how a program's instructions are applied in list order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation([u8; 5]);

impl Permutation {
    pub const IDENTITY: Permutation = Permutation([0, 1, 2, 3, 4]);

    /// From 1-based images `[p(1), ..., p(5)]`.
    pub fn from_images(images: [u8; 5]) -> Result<Self, PbpError> {
        let mut seen = [false; 5];
        let mut inner = [0u8; 5];
        for (i, &v) in images.iter().enumerate() {
            if !(1..=5).contains(&v) || seen[v as usize - 1] {
                return Err(PbpError::NotAPermutation(format!("{images:?}")));
            }
            seen[v as usize - 1] = true;
            inner[i] = v - 1;
        }
        Ok(Permutation(inner))
    }

    /// A single cycle in 1-based notation, e.g. `&[1, 3, 5, 4, 2]`.
    pub fn cycle(elems: &[u8]) -> Result<Self, PbpError> {
        let mut img = [1, 2, 3, 4, 5];
        let mut seen = [false; 5];
        for &e in elems {
            if !(1..=5).contains(&e) || seen[e as usize - 1] {
                return Err(PbpError::NotAPermutation(format!("cycle {elems:?}")));
            }
            seen[e as usize - 1] = true;
        }
        for (i, &e) in elems.iter().enumerate() {
            img[e as usize - 1] = elems[(i + 1) % elems.len()];
        }
        Self::from_images(img)
    }

    /// Image of `k` (1-based).
    pub fn apply(&self, k: u8) -> u8 {
        self.0[k as usize - 1] + 1
    }

    /// 1-based images.
    pub fn images(&self) -> [u8; 5] {
        self.0.map(|v| v + 1)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = [0u8; 5];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v as usize] = i as u8;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }

    pub fn fixed_points(&self) -> usize {
        self.0.iter().enumerate().filter(|&(i, &v)| i as u8 == v).count()
    }

    /// True for the cycles of length five, the only permutations without
    /// fixed points whose powers all move every element.
    pub fn is_five_cycle(&self) -> bool {
        let mut k = 0u8;
        for step in 1..=5 {
            k = self.0[k as usize];
            if k == 0 {
                return step == 5;
            }
        }
        false
    }

    pub fn all() -> impl Iterator<Item = Permutation> {
        (0..120u32).map(|mut code| {
            // Lehmer code
            let mut pool: Vec<u8> = (0..5).collect();
            let mut out = [0u8; 5];
            for (i, slot) in out.iter_mut().enumerate() {
                let f = (1..5 - i as u32).product::<u32>();
                let idx = (code / f) as usize;
                code %= f;
                *slot = pool.remove(idx);
            }
            Permutation(out)
        })
    }

    /// Some `θ` with `θ * self * θ⁻¹ = target`, if the two are conjugate.
    pub fn conjugator_to(&self, target: &Permutation) -> Option<Permutation> {
        Self::all().find(|t| *t * *self * t.inverse() == *target)
    }
}

impl Mul for Permutation {
    type Output = Permutation;

    fn mul(self, rhs: Permutation) -> Permutation {
        Permutation(self.0.map(|v| rhs.0[v as usize]))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("e");
        }
        let mut seen = [false; 5];
        for start in 0..5u8 {
            if seen[start as usize] || self.0[start as usize] == start {
                continue;
            }
            f.write_str("(")?;
            let mut k = start;
            loop {
                seen[k as usize] = true;
                write!(f, "{}", k + 1)?;
                k = self.0[k as usize];
                if k == start {
                    break;
                }
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Permutation {
    type Err = PbpError;

    /// Cycle notation, possibly a product of several cycles read left to
    /// right; `e` is the identity.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "e" || s.is_empty() {
            return Ok(Self::IDENTITY);
        }
        let bad = || PbpError::NotAPermutation(s.to_string());
        let mut acc = Self::IDENTITY;
        let mut rest = s;
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(bad)?;
            let end = body.find(')').ok_or_else(bad)?;
            let elems: Vec<u8> = body[..end]
                .chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| c.to_digit(10).map(|d| d as u8).ok_or_else(bad))
                .collect::<Result<_, _>>()?;
            acc = acc * Self::cycle(&elems)?;
            rest = body[end + 1..].trim_start();
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn commutator_of_the_two_canonical_cycles() {
        let prod = p("(12345)") * p("(13542)") * p("(54321)") * p("(24531)");
        assert_eq!(prod, p("(13254)"));
        assert!(prod.is_five_cycle());
        assert_eq!(p("(54321)"), p("(12345)").inverse());
        assert_eq!(p("(24531)"), p("(13542)").inverse());
    }

    #[test]
    fn cycle_notation_round_trip() {
        for perm in Permutation::all() {
            assert_eq!(perm.to_string().parse::<Permutation>().unwrap(), perm);
        }
        assert_eq!(Permutation::all().collect::<std::collections::HashSet<_>>().len(), 120);
    }

    #[test]
    fn left_to_right_composition() {
        let a = p("(12)");
        let b = p("(23)");
        // 1 -a-> 2 -b-> 3
        assert_eq!((a * b).apply(1), 3);
    }

    #[test]
    fn twenty_four_five_cycles() {
        let n = Permutation::all().filter(|q| q.is_five_cycle()).count();
        assert_eq!(n, 24);
        assert!(Permutation::all().filter(|q| q.is_five_cycle()).all(|q| q.fixed_points() == 0));
    }

    #[test]
    fn five_cycles_are_conjugate() {
        let mu = p("(12345)");
        for t in Permutation::all().filter(|q| q.is_five_cycle()) {
            let th = mu.conjugator_to(&t).unwrap();
            assert_eq!(th * mu * th.inverse(), t);
        }
    }

    #[test]
    fn bad_input() {
        assert!(Permutation::from_images([1, 1, 2, 3, 4]).is_err());
        assert!("(126)".parse::<Permutation>().is_err());
        assert!("(12".parse::<Permutation>().is_err());
    }
}
