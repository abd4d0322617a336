//! Exact solvers for the GCDS graph game and the CDS permutation game.
//!
//! Both games are finite win/loss games, so a position is decided by plain
//! recursive propagation: the mover wins iff some move leads to a position the
//! mover wins. Results are memoized per exact state (labels, favourable set,
//! mover). Principal variations take the least winning move for the mover, or
//! the least move when every move loses.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cache;
use crate::error::{Error, Result};
use crate::graph::{bit, bits, compress, Graph, Label, Position};
use crate::perm::{Permutation, Pointer};

pub const DEFAULT_MAX_VERTICES: usize = 16;
pub const DEFAULT_MAX_N: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Player {
    #[serde(rename = "ONE")]
    One,
    #[serde(rename = "TWO")]
    Two,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::One => Player::Two,
            Player::Two => Player::One,
        }
    }

    pub(crate) fn digit(self) -> char {
        match self {
            Player::One => '1',
            Player::Two => '2',
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::One => "ONE",
            Player::Two => "TWO",
        })
    }
}

impl FromStr for Player {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "ONE" | "1" => Ok(Player::One),
            "TWO" | "2" => Ok(Player::Two),
            _ => Err(Error::parse(s, "expected ONE or TWO")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GcdsState {
    pub position: Position,
    pub mover: Player,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CdsState {
    pub perm: Permutation,
    pub favorable: BTreeSet<Pointer>,
    pub mover: Player,
}

impl CdsState {
    pub fn new(perm: Permutation, favorable: impl IntoIterator<Item = Pointer>, mover: Player) -> Result<Self> {
        let favorable: BTreeSet<Pointer> = favorable.into_iter().collect();
        for p in &favorable {
            p.check(perm.len())?;
        }
        Ok(CdsState { perm, favorable, mover })
    }
}

pub type GraphMove = (Label, Label);
pub type PermMove = (Pointer, Pointer);

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolveReport<M> {
    pub winner: Player,
    pub principal_variation: Vec<M>,
    pub nodes_expanded: u64,
    pub cache_hits: u64,
}

/// Next-mover (N) or previous-mover (P) position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum NpClass {
    N,
    P,
}

/// `status` is `None` when the same player wins whoever moves first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NpReport {
    pub status: Option<NpClass>,
    pub winner_if_one_moves_first: Player,
    pub winner_if_two_moves_first: Player,
    pub anomaly: bool,
}

/// ONE wins iff the surviving vertex set is nonempty and inside the favourable set.
pub fn gcds_terminal_winner(position: &Position) -> Result<Player> {
    let g = &position.graph;
    if !g.is_edgeless() {
        return Err(Error::EdgesRemain(g.edge_count()));
    }
    let all_favorable = g.labels().iter().all(|l| position.favorable.contains(l));
    Ok(if g.vertex_count() > 0 && all_favorable { Player::One } else { Player::Two })
}

/// ONE wins iff the fixed point's code is favourable; the identity has no code.
pub fn cds_terminal_winner(perm: &Permutation, favorable: &BTreeSet<Pointer>) -> Result<Player> {
    Ok(match perm.fixed_point_code()? {
        Some(code) if favorable.contains(&code) => Player::One,
        _ => Player::Two,
    })
}

fn graph_terminal(g: &Graph, fav: u128) -> Player {
    let all = (0..g.vertex_count()).fold(0u128, |m, i| m | bit(i));
    if g.vertex_count() > 0 && all & !fav == 0 {
        Player::One
    } else {
        Player::Two
    }
}

fn perm_terminal(perm: &Permutation, fav: u128) -> Player {
    match perm.fixed_point_code().expect("terminal state is a fixed point") {
        Some(code) if fav & bit(code.code()) != 0 => Player::One,
        _ => Player::Two,
    }
}

/// Exact memo key.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) enum StateKey {
    Graph { graph: Graph, favorable: u128, mover: Player },
    Perm { perm: Permutation, favorable: u128, mover: Player },
}

#[derive(Debug, Clone, Copy)]
pub struct SolverConfig {
    pub max_vertices: usize,
    pub max_n: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { max_vertices: DEFAULT_MAX_VERTICES, max_n: DEFAULT_MAX_N }
    }
}

/// Counts of what a cache file contributed or received.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct CacheStats {
    pub entries: usize,
    /// Entries whose labels cannot be written in the key grammar.
    pub skipped: usize,
}

/// Memoizing solver. One instance may be reused across many solves; the memo
/// persists between them and can be saved to and loaded from a cache file.
#[derive(Debug, Default)]
pub struct Solver {
    config: SolverConfig,
    memo: HashMap<StateKey, Player>,
    nodes: u64,
    hits: u64,
}

impl Solver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_config(config: SolverConfig) -> Self {
        Solver { config, ..Self::default() }
    }

    pub fn config(&self) -> SolverConfig {
        self.config
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    fn lookup(&mut self, key: &StateKey) -> Option<Player> {
        let hit = self.memo.get(key).copied();
        if hit.is_some() {
            self.hits += 1;
        }
        hit
    }

    fn reset_counters(&mut self) {
        self.nodes = 0;
        self.hits = 0;
    }

    // ---- GCDS ----

    fn gcds_value(&mut self, g: &Graph, fav: u128, mover: Player) -> Player {
        if g.is_edgeless() {
            return graph_terminal(g, fav);
        }
        let key = StateKey::Graph { graph: g.clone(), favorable: fav, mover };
        if let Some(w) = self.lookup(&key) {
            return w;
        }
        self.nodes += 1;
        let mut result = mover.other();
        for (i, j) in g.edge_indices() {
            let (child, child_fav) = gcds_child(g, fav, i, j);
            if self.gcds_value(&child, child_fav, mover.other()) == mover {
                result = mover;
                break;
            }
        }
        self.memo.insert(key, result);
        result
    }

    pub fn solve_gcds(&mut self, state: &GcdsState) -> Result<SolveReport<GraphMove>> {
        let g = &state.position.graph;
        if g.vertex_count() > self.config.max_vertices {
            return Err(Error::BoundExceeded {
                what: "graph vertex count",
                actual: g.vertex_count(),
                limit: self.config.max_vertices,
            });
        }
        self.reset_counters();
        let fav = state.position.favorable_mask();
        let winner = self.gcds_value(g, fav, state.mover);

        let mut pv = Vec::new();
        let (mut cur, mut cur_fav, mut mover) = (g.clone(), fav, state.mover);
        while !cur.is_edgeless() {
            let wins = self.gcds_value(&cur, cur_fav, mover) == mover;
            let mut chosen = None;
            for (i, j) in cur.edge_indices() {
                let (child, child_fav) = gcds_child(&cur, cur_fav, i, j);
                if !wins || self.gcds_value(&child, child_fav, mover.other()) == mover {
                    chosen = Some(((i, j), child, child_fav));
                    break;
                }
            }
            let ((i, j), child, child_fav) = chosen.expect("a winning state has a winning move");
            pv.push((cur.label(i).clone(), cur.label(j).clone()));
            cur = child;
            cur_fav = child_fav;
            mover = mover.other();
        }
        assert_eq!(graph_terminal(&cur, cur_fav), winner, "principal variation disagrees with the solved value");

        Ok(SolveReport { winner, principal_variation: pv, nodes_expanded: self.nodes, cache_hits: self.hits })
    }

    /// Classifies a position as N or P by solving it once with each player moving first.
    pub fn np_status(&mut self, position: &Position) -> Result<NpReport> {
        let first_one = self.solve_gcds(&GcdsState { position: position.clone(), mover: Player::One })?.winner;
        let first_two = self.solve_gcds(&GcdsState { position: position.clone(), mover: Player::Two })?.winner;
        let status = match (first_one, first_two) {
            (Player::One, Player::Two) => Some(NpClass::N),
            (Player::Two, Player::One) => Some(NpClass::P),
            _ => None,
        };
        Ok(NpReport {
            status,
            winner_if_one_moves_first: first_one,
            winner_if_two_moves_first: first_two,
            anomaly: status.is_none(),
        })
    }

    // ---- CDS ----

    fn cds_value(&mut self, perm: &Permutation, fav: u128, mover: Player, depth: usize) -> Player {
        assert!(depth <= perm.len(), "cds play from a permutation of length {} exceeded {} moves", perm.len(), perm.len());
        let moves = perm.legal_moves();
        if moves.is_empty() {
            return perm_terminal(perm, fav);
        }
        let key = StateKey::Perm { perm: perm.clone(), favorable: fav, mover };
        if let Some(w) = self.lookup(&key) {
            return w;
        }
        self.nodes += 1;
        let mut result = mover.other();
        for (p, q) in moves {
            let next = perm.apply_cds(p, q).expect("legal move applies");
            if self.cds_value(&next, fav, mover.other(), depth + 1) == mover {
                result = mover;
                break;
            }
        }
        self.memo.insert(key, result);
        result
    }

    pub fn solve_cds(&mut self, state: &CdsState) -> Result<SolveReport<PermMove>> {
        let n = state.perm.len();
        if n > self.config.max_n {
            return Err(Error::BoundExceeded { what: "permutation length", actual: n, limit: self.config.max_n });
        }
        for p in &state.favorable {
            p.check(n)?;
        }
        self.reset_counters();
        let fav = state.favorable.iter().fold(0u128, |m, p| m | bit(p.code()));
        let winner = self.cds_value(&state.perm, fav, state.mover, 0);

        let mut pv = Vec::new();
        let (mut cur, mut mover) = (state.perm.clone(), state.mover);
        loop {
            let moves = cur.legal_moves();
            if moves.is_empty() {
                break;
            }
            let wins = self.cds_value(&cur, fav, mover, pv.len()) == mover;
            let mut chosen = None;
            for (p, q) in moves {
                let next = cur.apply_cds(p, q)?;
                if !wins || self.cds_value(&next, fav, mover.other(), pv.len() + 1) == mover {
                    chosen = Some(((p, q), next));
                    break;
                }
            }
            let (mv, next) = chosen.expect("a winning state has a winning move");
            pv.push(mv);
            cur = next;
            mover = mover.other();
        }
        assert!(pv.len() <= n);
        assert_eq!(perm_terminal(&cur, fav), winner, "principal variation disagrees with the solved value");

        Ok(SolveReport { winner, principal_variation: pv, nodes_expanded: self.nodes, cache_hits: self.hits })
    }

    // ---- persistence ----

    /// Writes every memo entry, sorted by key.
    pub fn save<W: Write>(&self, mut out: W) -> Result<CacheStats> {
        let mut lines: Vec<(String, Player)> = Vec::with_capacity(self.memo.len());
        let mut skipped = 0;
        for (key, &winner) in &self.memo {
            match cache::render_key(key) {
                Some(text) => lines.push((text, winner)),
                None => skipped += 1,
            }
        }
        lines.sort();
        writeln!(out, "{}", cache::HEADER)?;
        for (key, winner) in &lines {
            writeln!(out, "{key}\t{winner}")?;
        }
        out.flush()?;
        Ok(CacheStats { entries: lines.len(), skipped })
    }

    /// Merges a cache file into the memo. Nothing is merged if any line is bad.
    pub fn load<R: BufRead>(&mut self, input: R) -> Result<CacheStats> {
        let entries = cache::read_entries(input)?;
        let count = entries.len();
        self.memo.extend(entries);
        Ok(CacheStats { entries: count, skipped: 0 })
    }
}

/// gcds₂ at the edge `(i, j)` together with the re-indexed favourable mask.
fn gcds_child(g: &Graph, fav: u128, i: usize, j: usize) -> (Graph, u128) {
    let (after, doomed) = g.gcds2_parts(i, j);
    let child = after.without(doomed);
    assert!(
        child.non_isolated_count() < g.non_isolated_count(),
        "gcds2 move failed to reduce the number of non-isolated vertices"
    );
    (child, compress(fav, doomed, g.vertex_count()))
}

/// Legal moves of a graph state in solver order.
pub fn gcds_moves(g: &Graph) -> Vec<GraphMove> {
    g.edges()
}

/// Favourable vertices that survive in `g`.
pub fn favorable_survivors(g: &Graph, favorable: &BTreeSet<Label>) -> BTreeSet<Label> {
    let mask = favorable.iter().filter_map(|l| g.index_of(l.as_str())).fold(0, |m, i| m | bit(i));
    bits(mask).map(|i| g.label(i).clone()).collect()
}
