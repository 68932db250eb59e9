//! Majority: the water carries a counter of the positions with
//! `x_i = y_i = 1` and leaves at Bob once the counter would reach `n/2 + 1`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::ghcore::{bit, GameError, GardenHoseGame, Matching, Strategy};

use super::need;

/// Pipe layout: for every index `i`, the counter values present on the
/// `Q` pipes (water arriving at Bob) and on the `R` pipes (water coming back).
struct Layout {
    n: usize,
    half: usize,
    q: HashMap<(usize, usize), u32>,
    r: HashMap<(usize, usize), u32>,
    size: u32,
}

impl Layout {
    /// `ranges(i)` gives the inclusive counter ranges `(q_lo, q_hi, r_lo, r_hi)`.
    fn new(n: usize, ranges: impl Fn(usize) -> (usize, usize, usize, usize)) -> Layout {
        let half = n / 2;
        let mut q = HashMap::new();
        let mut r = HashMap::new();
        let mut next = 1u32;
        for i in 1..=n {
            let (qlo, qhi, rlo, rhi) = ranges(i);
            for c in qlo..=qhi {
                q.insert((i, c), next);
                next += 1;
            }
            for c in rlo..=rhi {
                r.insert((i, c), next);
                next += 1;
            }
        }
        Layout { n, half, q, r, size: next - 1 }
    }

    fn game(self) -> Result<GardenHoseGame, GameError> {
        let layout = Arc::new(self);
        let (la, lb) = (layout.clone(), layout.clone());
        let alice = Strategy::rule(move |x| {
            let l = &la;
            let ones: Vec<usize> = (1..=l.n).filter(|&i| bit(x, l.n, i)).collect();
            let mut m = Matching::empty();
            if let Some(&first) = ones.first() {
                if let Some(&p) = l.q.get(&(first, 0)) {
                    m.push(0, p);
                }
            }
            for w in ones.windows(2) {
                for c in 0..=l.half {
                    if let (Some(&a), Some(&b)) = (l.r.get(&(w[0], c)), l.q.get(&(w[1], c))) {
                        m.push(a, b);
                    }
                }
            }
            m
        });
        let bob = Strategy::rule(move |y| {
            let l = &lb;
            let mut m = Matching::empty();
            for i in 1..=l.n {
                let inc = bit(y, l.n, i) as usize;
                for c in 0..=l.half {
                    if let (Some(&a), Some(&b)) = (l.q.get(&(i, c)), l.r.get(&(i, c + inc))) {
                        m.push(a, b);
                    }
                }
            }
            m
        });
        GardenHoseGame::new(layout.n, layout.size, alice, bob)
    }
}

fn check_n(n: usize) -> Result<(), GameError> {
    need(n >= 2 && n.is_multiple_of(2), || format!("majority needs an even n >= 2, got {n}"))?;
    need(n <= crate::ghcore::MAX_BITS, || format!("n={n} too large"))
}

/// Majority with `n + 2` pipes per index, `(n + 2)·n` in total.
///
/// Index `i` owns `Q^0_i..Q^{n/2}_i` followed by `R^0_i..R^{n/2}_i`. Bob
/// joins `Q^m_i` to `R^m_i` when `y_i = 0` and to `R^{m+1}_i` when
/// `y_i = 1`, leaving `Q^{n/2}_i` open. Alice starts the water in `Q^0_k`
/// for the first `k` with `x_k = 1` and joins `R^m_i` to `Q^m_k` between
/// consecutive such indices. With `x = 0^n` the tap stays unconnected.
pub fn build_maj(n: usize) -> Result<GardenHoseGame, GameError> {
    check_n(n)?;
    let h = n / 2;
    Layout::new(n, |_| (0, h, 0, h)).game()
}

/// Majority with only the counter values that can still matter.
///
/// Before index `i` the counter is at most `i - 1`, and values below
/// `i - n/2` can no longer reach the threshold. Pipes for other values are
/// dropped; water that would need one leaves at Alice, which is the right
/// answer there.
pub fn build_maj_optimized(n: usize) -> Result<GardenHoseGame, GameError> {
    check_n(n)?;
    let h = n / 2;
    Layout::new(n, |i| {
        let lo = i.saturating_sub(h);
        let hi = (i - 1).min(h);
        (lo, hi, lo, (hi + 1).min(h))
    })
    .game()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ghcore::{computes, flow, validate_game, BooleanFunction, Side};

    #[test]
    fn sizes() {
        for n in [2, 4, 6] {
            let g = build_maj(n).unwrap();
            assert_eq!(g.size() as usize, (n + 2) * n);
            assert!(g.size() as usize <= (n + 2) * (n + 2));
        }
    }

    #[test]
    fn rejects_odd_and_tiny() {
        assert!(build_maj(3).is_err());
        assert!(build_maj(0).is_err());
        assert!(build_maj_optimized(5).is_err());
    }

    #[test]
    fn computes_majority() {
        for n in [2, 4] {
            let f = BooleanFunction::majority(n).unwrap();
            let g = build_maj(n).unwrap();
            assert!(validate_game(&g).is_empty());
            assert!(computes(&g, &f).unwrap().holds);
            let o = build_maj_optimized(n).unwrap();
            assert!(validate_game(&o).is_empty());
            assert!(computes(&o, &f).unwrap().holds);
            assert!(o.size() < g.size());
        }
    }

    #[test]
    fn all_ones_exits_at_bob_through_open_top_q() {
        let n = 4;
        let g = build_maj(n).unwrap();
        let p = flow(&g, 0b1111, 0b1111).unwrap();
        assert_eq!(p.terminal_side, Side::Bob);
        // the open pipe is Q^{n/2}_i, the (n/2 + 1)-th pipe of index n/2 + 1
        let i = n / 2 + 1;
        assert_eq!(p.exit().vertex as usize, (i - 1) * (n + 2) + 1 + n / 2);
    }

    #[test]
    fn zero_x_stays_at_alice() {
        let g = build_maj(4).unwrap();
        for y in 0..16 {
            assert_eq!(flow(&g, 0, y).unwrap().terminal_side, Side::Alice);
        }
    }
}
