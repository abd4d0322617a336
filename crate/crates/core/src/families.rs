//! Named families: triangle chains, their favourable sets, the tight
//! permutations built on them, and the closed-form bound predictor.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::games::NpClass;
use crate::graph::{Graph, Label, Position};
use crate::iso::{are_isomorphic, positions_isomorphic};
use crate::overlap::overlap_graph;
use crate::perm::{Permutation, Pointer};

/// Triangle chain on `1..=2m+1`: the triangle `{1,2,3}` followed by `m - 1`
/// further triangles, each sharing its first vertex with the previous one.
pub fn gen_chain(m: usize) -> Result<Graph> {
    if m < 1 {
        return Err(Error::Range(format!("chain length must be at least 1, got {m}")));
    }
    let mut edges = vec![(1, 2), (1, 3), (2, 3)];
    for k in 1..m {
        edges.extend([(2 * k + 1, 2 * k + 2), (2 * k + 1, 2 * k + 3), (2 * k + 2, 2 * k + 3)]);
    }
    Graph::new(1..=2 * m + 1, edges)
}

/// `{2}` together with every multiple of 4 up to `2m + 1`.
pub fn gen_favorable(m: usize) -> Result<BTreeSet<Label>> {
    if m < 1 {
        return Err(Error::Range(format!("chain length must be at least 1, got {m}")));
    }
    Ok(std::iter::once(2).chain((4..=2 * m + 1).step_by(4)).map(Label::from).collect())
}

fn check_alpha_length(n: usize) -> Result<()> {
    if n <= 4 || !n.is_multiple_of(4) {
        return Err(Error::Range(format!("length must be a multiple of 4 greater than 4, got {n}")));
    }
    Ok(())
}

/// `[5] ++ [7,6, 9,8, …, n-1,n-2] ++ [3,2,4,n,1]`.
pub fn gen_alpha(n: usize) -> Result<Permutation> {
    check_alpha_length(n)?;
    let mut entries = vec![5];
    for j in 3..n / 2 {
        entries.extend([2 * j + 1, 2 * j]);
    }
    entries.extend([3, 2, 4, n, 1]);
    Permutation::from_entries(entries)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TightInstance {
    pub perm: Permutation,
    pub favorable: BTreeSet<Pointer>,
    /// Length of the triangle chain the overlap graph is isomorphic to.
    pub chain_length: usize,
}

impl TightInstance {
    /// The overlap graph with the favourable codes as a graph position.
    pub fn position(&self) -> Position {
        Position::new(overlap_graph(&self.perm), self.favorable.iter().map(|p| p.code()))
            .expect("favourable codes are pointer codes of the permutation")
    }
}

/// The permutation from [`gen_alpha`] with the favourable set carried over
/// from the chain along an isomorphism onto its overlap graph.
pub fn tight_instance(n: usize) -> Result<TightInstance> {
    let perm = gen_alpha(n)?;
    let m = (n - 2) / 2;
    let chain = gen_chain(m)?;
    let overlap = overlap_graph(&perm);
    let map = are_isomorphic(&chain, &overlap)?.ok_or_else(|| {
        Error::Construction(format!("overlap graph of {perm} is not isomorphic to the chain of length {m}"))
    })?;
    let mut favorable = BTreeSet::new();
    for v in gen_favorable(m)? {
        let code: usize = map[&v].as_str().parse().expect("overlap labels are pointer codes");
        favorable.insert(Pointer::new(code));
    }
    let instance = TightInstance { perm, favorable, chain_length: m };
    let source = Position::new(chain, gen_favorable(m)?)?;
    if positions_isomorphic(&source, &instance.position())?.is_none() {
        return Err(Error::Construction("carried favourable set does not give an isomorphic position".into()));
    }
    Ok(instance)
}

/// N for odd chain lengths, P for even ones.
pub fn expected_np(m: usize) -> Result<NpClass> {
    if m < 1 {
        return Err(Error::Range(format!("chain length must be at least 1, got {m}")));
    }
    Ok(if m % 2 == 1 { NpClass::N } else { NpClass::P })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "ONE")]
    One,
    #[serde(rename = "TWO")]
    Two,
    #[serde(rename = "UNDETERMINED")]
    Undetermined,
}

/// Inequalities between pile size `P` and favourable count `A`; `j = P mod 4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundRule {
    /// `4A >= 3P`.
    ThreeQuarters,
    /// `0 < P` and `4A <= max(P - 8, 0)`.
    QuarterMinusTwo,
    /// `j < 2` and `A >= 3(P - j)/4 + j`.
    EndgameOneLow,
    /// `j >= 2` and `A >= 3(P - j)/4 + j - 1`.
    EndgameOneHigh,
    /// `P - A >= 3(P - j)/4 + j`.
    EndgameTwo,
}

impl BoundRule {
    pub fn favours(self) -> Verdict {
        match self {
            BoundRule::ThreeQuarters | BoundRule::EndgameOneLow | BoundRule::EndgameOneHigh => Verdict::One,
            BoundRule::QuarterMinusTwo | BoundRule::EndgameTwo => Verdict::Two,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundPrediction {
    pub verdict: Verdict,
    pub rules: Vec<BoundRule>,
}

pub fn bound_prediction(pile_size: usize, a_size: usize) -> Result<BoundPrediction> {
    if pile_size < 1 {
        return Err(Error::Range("pile size must be at least 1".into()));
    }
    if a_size > pile_size {
        return Err(Error::Range(format!("favourable count {a_size} exceeds pile size {pile_size}")));
    }
    let (p, a) = (pile_size as i64, a_size as i64);
    let j = p % 4;
    let mut rules = Vec::new();
    if 4 * a >= 3 * p {
        rules.push(BoundRule::ThreeQuarters);
    }
    if 4 * a <= (p - 8).max(0) {
        rules.push(BoundRule::QuarterMinusTwo);
    }
    if j < 2 && 4 * a >= 3 * (p - j) + 4 * j {
        rules.push(BoundRule::EndgameOneLow);
    }
    if j >= 2 && 4 * a >= 3 * (p - j) + 4 * (j - 1) {
        rules.push(BoundRule::EndgameOneHigh);
    }
    if 4 * (p - a) >= 3 * (p - j) + 4 * j {
        rules.push(BoundRule::EndgameTwo);
    }
    let one = rules.iter().any(|r| r.favours() == Verdict::One);
    let two = rules.iter().any(|r| r.favours() == Verdict::Two);
    assert!(!(one && two), "contradictory bound rules for pile {pile_size}, favourable {a_size}: {rules:?}");
    let verdict = match (one, two) {
        (true, _) => Verdict::One,
        (_, true) => Verdict::Two,
        _ => Verdict::Undetermined,
    };
    Ok(BoundPrediction { verdict, rules })
}
