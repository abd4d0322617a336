//! Cycle graphs, their alternating-cycle decomposition and the strategic pile.
//!
//! The brute-force searches at the bottom of this module explore every
//! reachable permutation and serve as independent checks of the pile
//! characterizations.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{Permutation, Pointer};

/// Default size limit for the exhaustive searches.
pub const DEFAULT_BRUTE_FORCE_MAX_N: usize = 7;

/// Directed graph on `0..=n+1` with dotted edges `i -> i+1` (`0 <= i <= n`)
/// and one black out-edge from every vertex `1..=n+1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleGraph {
    n: usize,
    // black_successor[v] for v in 1..=n+1; index 0 is unused
    black_successor: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum AltEdge {
    /// `from -> from + 1`
    Dotted { from: usize },
    Black { from: usize, to: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AltCycleDecomposition {
    pub cycles: Vec<Vec<AltEdge>>,
}

/// Pointer codes on the alternating walk from `n -> n+1` to `0 -> 1`, in walk order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct StrategicPile {
    codes: Vec<Pointer>,
}

impl CycleGraph {
    pub fn new(perm: &Permutation) -> Self {
        let e = perm.entries();
        let n = e.len();
        let mut black_successor = vec![0; n + 2];
        for i in 1..n {
            black_successor[e[i]] = e[i - 1];
        }
        black_successor[e[0]] = 0;
        black_successor[n + 1] = e[n - 1];
        CycleGraph { n, black_successor }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Black out-neighbour of `v`; `None` for vertex 0 or out-of-range.
    pub fn black_successor(&self, v: usize) -> Option<usize> {
        (1..=self.n + 1).contains(&v).then(|| self.black_successor[v])
    }

    pub fn dotted_edges(&self) -> impl Iterator<Item = AltEdge> {
        (0..=self.n).map(|from| AltEdge::Dotted { from })
    }

    pub fn black_edges(&self) -> impl Iterator<Item = AltEdge> + '_ {
        (1..=self.n + 1).map(|from| AltEdge::Black { from, to: self.black_successor[from] })
    }

    /// Follows the alternating walk that starts with the dotted edge `start -> start+1`,
    /// returning the dotted tails visited (including `start`) until the walk returns.
    fn walk_from(&self, start: usize) -> Vec<usize> {
        let mut tails = vec![start];
        let mut at = self.black_successor[start + 1];
        while at != start {
            tails.push(at);
            at = self.black_successor[at + 1];
        }
        tails
    }

    pub fn alternating_cycles(&self) -> AltCycleDecomposition {
        let mut seen = vec![false; self.n + 1];
        let mut cycles = Vec::new();
        for start in 0..=self.n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            for tail in self.walk_from(start) {
                seen[tail] = true;
                let from = tail + 1;
                cycle.push(AltEdge::Dotted { from: tail });
                cycle.push(AltEdge::Black { from, to: self.black_successor[from] });
            }
            cycles.push(cycle);
        }
        AltCycleDecomposition { cycles }
    }
}

pub fn build_cycle_graph(perm: &Permutation) -> CycleGraph {
    CycleGraph::new(perm)
}

pub fn alternating_cycles(cg: &CycleGraph) -> AltCycleDecomposition {
    cg.alternating_cycles()
}

impl StrategicPile {
    pub fn codes(&self) -> &[Pointer] {
        &self.codes
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn contains(&self, p: Pointer) -> bool {
        self.codes.contains(&p)
    }

    pub fn to_set(&self) -> BTreeSet<Pointer> {
        self.codes.iter().copied().collect()
    }
}

pub fn strategic_pile(perm: &Permutation) -> StrategicPile {
    let cg = CycleGraph::new(perm);
    let n = cg.n;
    let tails = cg.walk_from(n);
    let codes = match tails.iter().position(|&t| t == 0) {
        Some(end) => tails[1..end].iter().map(|&t| Pointer::new(t)).collect(),
        None => Vec::new(),
    };
    StrategicPile { codes }
}

pub fn is_sortable(perm: &Permutation) -> bool {
    strategic_pile(perm).is_empty()
}

/// Fixed points reachable from a permutation by sequences of cds moves.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AchievableFixedPoints {
    pub identity: bool,
    pub codes: BTreeSet<Pointer>,
}

impl AchievableFixedPoints {
    fn merge(&mut self, other: &AchievableFixedPoints) {
        self.identity |= other.identity;
        self.codes.extend(other.codes.iter().copied());
    }
}

fn check_bound(perm: &Permutation, max_n: usize) -> Result<()> {
    if perm.len() > max_n {
        Err(Error::BoundExceeded { what: "permutation length", actual: perm.len(), limit: max_n })
    } else {
        Ok(())
    }
}

/// Exhaustive memoized search over all cds move sequences.
pub fn achievable_fixed_points(perm: &Permutation, max_n: usize) -> Result<AchievableFixedPoints> {
    check_bound(perm, max_n)?;
    let mut memo = HashMap::new();
    Ok(reach(perm, &mut memo))
}

fn reach(perm: &Permutation, memo: &mut HashMap<Permutation, AchievableFixedPoints>) -> AchievableFixedPoints {
    if let Some(hit) = memo.get(perm) {
        return hit.clone();
    }
    let moves = perm.legal_moves();
    let mut out = AchievableFixedPoints::default();
    if moves.is_empty() {
        match perm.fixed_point_code().expect("no legal moves means fixed point") {
            Some(code) => {
                out.codes.insert(code);
            }
            None => out.identity = true,
        }
    } else {
        for (p, q) in moves {
            let next = perm.apply_cds(p, q).expect("legal move applies");
            let sub = reach(&next, memo);
            out.merge(&sub);
        }
    }
    memo.insert(perm.clone(), out.clone());
    out
}

/// True iff some sequence of cds moves reaches the identity.
pub fn sortable_bruteforce(perm: &Permutation, max_n: usize) -> Result<bool> {
    achievable_fixed_points(perm, max_n).map(|a| a.identity)
}
