use std::fmt;

use serde::{Deserialize, Serialize};

/// Which end of the pipes a vertex lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    /// Alice's side, including the tap.
    Alice,
    Bob,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Alice => Side::Bob,
            Side::Bob => Side::Alice,
        }
    }

    /// Function value encoded by water leaving on this side.
    pub fn as_bit(self) -> bool {
        self == Side::Bob
    }

    pub fn from_bit(b: bool) -> Side {
        if b {
            Side::Bob
        } else {
            Side::Alice
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Alice => "A",
            Side::Bob => "B",
        })
    }
}

/// Why a set of hose connections is not a matching.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatchingFault {
    SelfLoop(u32),
    /// Vertex touched by two or more connections.
    Degree(u32),
    /// Vertex outside the side's vertex set.
    OutOfRange(u32),
}

impl MatchingFault {
    pub fn vertex(&self) -> u32 {
        match *self {
            MatchingFault::SelfLoop(v) | MatchingFault::Degree(v) | MatchingFault::OutOfRange(v) => v,
        }
    }
}

impl fmt::Display for MatchingFault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatchingFault::SelfLoop(v) => write!(f, "self-loop at vertex {v}"),
            MatchingFault::Degree(v) => write!(f, "vertex {v} used by more than one connection"),
            MatchingFault::OutOfRange(v) => write!(f, "vertex {v} out of range"),
        }
    }
}

/// Hose connections on one side: unordered vertex pairs.
///
/// The pairs are kept normalized (`u < v`) and sorted, so two matchings with
/// the same edges compare equal. Validity (degree at most one) is checked
/// separately because parsed input may violate it.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Matching {
    edges: Vec<(u32, u32)>,
}

impl Matching {
    pub fn empty() -> Self {
        Matching { edges: Vec::new() }
    }

    pub fn from_edges<I: IntoIterator<Item = (u32, u32)>>(edges: I) -> Self {
        let mut edges: Vec<(u32, u32)> = edges
            .into_iter()
            .map(|(u, v)| if u <= v { (u, v) } else { (v, u) })
            .collect();
        edges.sort_unstable();
        Matching { edges }
    }

    pub fn push(&mut self, u: u32, v: u32) {
        let e = if u <= v { (u, v) } else { (v, u) };
        let pos = self.edges.partition_point(|x| *x < e);
        self.edges.insert(pos, e);
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Faults against the vertex range `lo..=hi`, each vertex reported once,
    /// in ascending vertex order.
    pub fn faults(&self, lo: u32, hi: u32) -> Vec<MatchingFault> {
        let mut faults = Vec::new();
        let mut degree = std::collections::BTreeMap::<u32, u32>::new();
        for &(u, v) in &self.edges {
            if u == v {
                faults.push(MatchingFault::SelfLoop(u));
                continue;
            }
            for w in [u, v] {
                if w < lo || w > hi {
                    faults.push(MatchingFault::OutOfRange(w));
                } else {
                    *degree.entry(w).or_default() += 1;
                }
            }
        }
        faults.extend(
            degree
                .into_iter()
                .filter(|&(_, d)| d > 1)
                .map(|(w, _)| MatchingFault::Degree(w)),
        );
        faults.sort_by_key(|f| f.vertex());
        faults.dedup();
        faults
    }

    /// Partner table over `0..=hi`; `NONE` marks an unmatched vertex.
    ///
    /// Assumes the matching is valid for that range.
    pub fn partners(&self, hi: u32) -> Vec<u32> {
        let mut p = vec![NONE; hi as usize + 1];
        for &(u, v) in &self.edges {
            p[u as usize] = v;
            p[v as usize] = u;
        }
        p
    }

    pub fn partner(&self, w: u32) -> Option<u32> {
        self.edges.iter().find_map(|&(u, v)| {
            if u == w {
                Some(v)
            } else if v == w {
                Some(u)
            } else {
                None
            }
        })
    }

    /// Applies a vertex relabeling.
    pub fn map_vertices(&self, f: impl Fn(u32) -> u32) -> Matching {
        Matching::from_edges(self.edges.iter().map(|&(u, v)| (f(u), f(v))))
    }
}

/// Sentinel for "no partner" in partner tables.
pub const NONE: u32 = u32::MAX;

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (u, v)) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{u}-{v}")?;
        }
        Ok(())
    }
}
