//! Permutations, pointers and the context-directed swap.
//!
//! A permutation `[a_1, ..., a_n]` carries the pointer `(k, k+1)` twice: on the
//! right-hand (head) side of the entry `k` and on the left-hand (tail) side of
//! the entry `k + 1`. Pointers are identified by the integer `k`. Only codes
//! `1..=n-1` are pointers; the boundary pairs `(0, 1)` and `(n, n+1)` are not.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The pointer `(k, k+1)`, stored as `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Pointer(usize);

impl Pointer {
    pub const fn new(code: usize) -> Self {
        Pointer(code)
    }

    pub const fn code(self) -> usize {
        self.0
    }

    /// Checks `1 <= k <= n - 1`.
    pub fn check(self, n: usize) -> Result<Self> {
        if self.0 >= 1 && self.0 < n {
            Ok(self)
        } else {
            Err(Error::PointerOutOfRange { code: self.0, n })
        }
    }
}

impl fmt::Display for Pointer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.0, self.0 + 1)
    }
}

/// Which side of an entry a pointer sits on. Tail (left) sorts before head (right).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    TailLeft,
    HeadRight,
}

/// One of the two places a pointer occurs. The derived order is the linear
/// reading order: by position, then tail before head.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Occurrence {
    /// 1-based index of the carrying entry.
    pub position: usize,
    pub side: Side,
}

impl Occurrence {
    /// Number of entries strictly to the left of this cut.
    fn boundary(self) -> usize {
        match self.side {
            Side::TailLeft => self.position - 1,
            Side::HeadRight => self.position,
        }
    }
}

/// The four rewrite cases of cds. `P` is the pointer that occurs first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CdsCase {
    Case1,
    Case2,
    Case3,
    Case4,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Role {
    P,
    Q,
}

struct Template {
    case: CdsCase,
    slots: [(Role, Side); 4],
}

use Role::{P as RP, Q as RQ};
use Side::{HeadRight as H, TailLeft as T};

// Occurrence patterns in reading order. Block I lies between slots 0 and 1,
// block II between slots 2 and 3; the rewrite exchanges the two blocks.
const TEMPLATES: [Template; 4] = [
    // [.., _p x+1, .., y_q, .., x_p, .., _q y+1, ..]
    Template { case: CdsCase::Case1, slots: [(RP, T), (RQ, H), (RP, H), (RQ, T)] },
    // [.., x_p, .., y_q, .., _p x+1, .., _q y+1, ..]
    Template { case: CdsCase::Case2, slots: [(RP, H), (RQ, H), (RP, T), (RQ, T)] },
    // [.., x_p, .., _q y+1, .., _p x+1, .., y_q, ..]
    Template { case: CdsCase::Case3, slots: [(RP, H), (RQ, T), (RP, T), (RQ, H)] },
    // [.., _p x+1, .., _q y+1, .., x_p, .., y_q, ..]
    Template { case: CdsCase::Case4, slots: [(RP, T), (RQ, T), (RP, H), (RQ, H)] },
];

/// A permutation of `1..=n`, `n >= 1`. Immutable; every rewrite returns a new value.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    entries: Vec<usize>,
    // position[v] is the 1-based index of value v; position[0] unused.
    position: Vec<usize>,
}

impl Permutation {
    pub fn from_entries(entries: Vec<usize>) -> Result<Self> {
        let n = entries.len();
        if n == 0 {
            return Err(Error::parse("", "empty permutation"));
        }
        let mut position = vec![0; n + 1];
        for (i, &v) in entries.iter().enumerate() {
            if v == 0 || v > n {
                return Err(Error::parse(v.to_string(), format!("value out of range 1..={n}")));
            }
            if position[v] != 0 {
                return Err(Error::parse(v.to_string(), "duplicate value"));
            }
            position[v] = i + 1;
        }
        Ok(Permutation { entries, position })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::from_entries((1..=n).collect())
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        let mut entries: Vec<usize> = (1..=n).collect();
        entries.shuffle(rng);
        Self::from_entries(entries)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<usize> {
        self.entries
    }

    /// 1-based position of `value`.
    pub fn position_of(&self, value: usize) -> Option<usize> {
        self.position.get(value).copied().filter(|&p| p != 0)
    }

    /// All pointers `1..=n-1`.
    pub fn pointers(&self) -> impl Iterator<Item = Pointer> {
        (1..self.len()).map(Pointer)
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// The two occurrences of `p` in reading order.
    pub fn pointer_occurrences(&self, p: Pointer) -> Result<(Occurrence, Occurrence)> {
        p.check(self.len())?;
        Ok(self.occurrences_unchecked(p))
    }

    fn occurrences_unchecked(&self, p: Pointer) -> (Occurrence, Occurrence) {
        let k = p.code();
        let head = Occurrence { position: self.position[k], side: Side::HeadRight };
        let tail = Occurrence { position: self.position[k + 1], side: Side::TailLeft };
        if head < tail {
            (head, tail)
        } else {
            (tail, head)
        }
    }

    pub fn interlocks(&self, p: Pointer, q: Pointer) -> Result<bool> {
        let n = self.len();
        p.check(n)?;
        q.check(n)?;
        if p == q {
            return Err(Error::SamePointer(p.code()));
        }
        Ok(self.interlocks_unchecked(p, q))
    }

    fn interlocks_unchecked(&self, p: Pointer, q: Pointer) -> bool {
        let (a1, a2) = self.occurrences_unchecked(p);
        let (b1, b2) = self.occurrences_unchecked(q);
        let inside = |o: Occurrence| a1 < o && o < a2;
        inside(b1) != inside(b2)
    }

    /// Every interlocking pair `(p, q)` with `p < q`, in lexicographic order.
    pub fn legal_moves(&self) -> Vec<(Pointer, Pointer)> {
        let n = self.len();
        let mut moves = Vec::new();
        for a in 1..n {
            for b in a + 1..n {
                if self.interlocks_unchecked(Pointer(a), Pointer(b)) {
                    moves.push((Pointer(a), Pointer(b)));
                }
            }
        }
        moves
    }

    pub fn has_legal_move(&self) -> bool {
        let n = self.len();
        (1..n).any(|a| (a + 1..n).any(|b| self.interlocks_unchecked(Pointer(a), Pointer(b))))
    }

    /// Finds which rewrite case applies to the interlocking pair, returning the
    /// case and the four cuts in reading order.
    fn match_template(&self, p: Pointer, q: Pointer) -> Result<(CdsCase, [Occurrence; 4])> {
        if !self.interlocks(p, q)? {
            return Err(Error::NotApplicable { p: p.code(), q: q.code() });
        }
        let mut labelled: Vec<(Occurrence, Pointer)> = Vec::with_capacity(4);
        let (p1, p2) = self.occurrences_unchecked(p);
        let (q1, q2) = self.occurrences_unchecked(q);
        labelled.extend([(p1, p), (p2, p), (q1, q), (q2, q)]);
        labelled.sort();

        let mut found = None;
        let mut matches = 0;
        for (as_p, as_q) in [(p, q), (q, p)] {
            for t in &TEMPLATES {
                let fits = t.slots.iter().zip(&labelled).all(|(&(role, side), &(occ, ptr))| {
                    let want = match role {
                        Role::P => as_p,
                        Role::Q => as_q,
                    };
                    ptr == want && occ.side == side
                });
                if fits {
                    matches += 1;
                    found = Some(t.case);
                }
            }
        }
        match (matches, found) {
            (1, Some(case)) => {
                let cuts = [labelled[0].0, labelled[1].0, labelled[2].0, labelled[3].0];
                Ok((case, cuts))
            }
            _ => Err(Error::TemplateMismatch { p: p.code(), q: q.code(), matches }),
        }
    }

    /// Which of the four rewrite cases `cds_{p,q}` uses here.
    pub fn cds_case(&self, p: Pointer, q: Pointer) -> Result<CdsCase> {
        self.match_template(p, q).map(|(case, _)| case)
    }

    /// The context-directed swap `cds_{p,q}`: exchanges block I (between the
    /// first two cuts) with block II (between the last two).
    pub fn apply_cds(&self, p: Pointer, q: Pointer) -> Result<Permutation> {
        let (_, cuts) = self.match_template(p, q)?;
        let [b1, b2, b3, b4] = cuts.map(Occurrence::boundary);
        let e = &self.entries;
        let mut out = Vec::with_capacity(e.len());
        out.extend_from_slice(&e[..b1]);
        out.extend_from_slice(&e[b3..b4]);
        out.extend_from_slice(&e[b2..b3]);
        out.extend_from_slice(&e[b1..b2]);
        out.extend_from_slice(&e[b4..]);
        Permutation::from_entries(out)
    }

    pub fn is_fixed_point(&self) -> bool {
        !self.has_legal_move()
    }

    /// Closed form of the fixed points: identity or `[k+1, ..., n, 1, ..., k]`.
    pub fn is_identity_or_rotation(&self) -> bool {
        let n = self.len();
        let shift = self.entries[0] - 1;
        self.entries.iter().enumerate().all(|(i, &v)| v == (shift + i) % n + 1)
    }

    /// For the fixed point `[i, ..., n, 1, ..., i-1]` with `i >= 2`, the code
    /// `i - 1`; `None` for the identity.
    pub fn fixed_point_code(&self) -> Result<Option<Pointer>> {
        if !self.is_fixed_point() {
            return Err(Error::NotFixedPoint(self.to_string()));
        }
        let first = self.entries[0];
        Ok(if first == 1 { None } else { Some(Pointer(first - 1)) })
    }

    /// Advances to the next permutation in lexicographic order.
    pub fn next_lexicographic(&self) -> Option<Permutation> {
        let mut e = self.entries.clone();
        let i = (1..e.len()).rev().find(|&i| e[i - 1] < e[i])?;
        let j = (i..e.len()).rev().find(|&j| e[j] > e[i - 1])?;
        e.swap(i - 1, j);
        e[i..].reverse();
        Permutation::from_entries(e).ok()
    }
}

/// All of `S_n` in lexicographic order.
pub fn all_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    let first = Permutation::identity(n).ok();
    std::iter::successors(first, Permutation::next_lexicographic)
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{self}")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, v) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Whitespace-separated integers; commas and surrounding brackets are tolerated.
    fn from_str(text: &str) -> Result<Self> {
        let cleaned = text.trim().trim_start_matches('[').trim_end_matches(']');
        let mut entries = Vec::new();
        for token in cleaned.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
            let v: usize = token.parse().map_err(|_| Error::parse(token, "not a positive integer"))?;
            entries.push(v);
        }
        Permutation::from_entries(entries)
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.entries.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let entries = Vec::<usize>::deserialize(d)?;
        Permutation::from_entries(entries).map_err(serde::de::Error::custom)
    }
}
