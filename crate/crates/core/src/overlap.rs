//! Overlap (move) graphs of permutations.

use crate::error::Result;
use crate::graph::{Graph, Label};
use crate::perm::{Permutation, Pointer};

/// Vertices are the pointer codes `1..=n-1` as decimal labels; `{p, q}` is an
/// edge iff the pointers interlock. `n = 1` gives the graph with no vertices.
pub fn overlap_graph(perm: &Permutation) -> Graph {
    let vertices = perm.pointers().map(|p| Label::from(p.code()));
    let edges = perm.legal_moves().into_iter().map(|(p, q)| (Label::from(p.code()), Label::from(q.code())));
    Graph::new(vertices, edges).expect("pointer codes are distinct")
}

/// Both sides of the commutation between cds and gcds, for inspection.
#[derive(Debug, Clone)]
pub struct Commutation {
    pub after_cds: Graph,
    pub after_gcds: Graph,
}

impl Commutation {
    pub fn holds(&self) -> bool {
        self.after_cds == self.after_gcds
    }
}

pub fn commutation_sides(perm: &Permutation, p: Pointer, q: Pointer) -> Result<Commutation> {
    let next = perm.apply_cds(p, q)?;
    let after_cds = overlap_graph(&next);
    let after_gcds = overlap_graph(perm).apply_gcds(&p.code().to_string(), &q.code().to_string())?;
    Ok(Commutation { after_cds, after_gcds })
}

/// Whether the overlap graph of `cds_{p,q}(perm)` equals `gcds` applied to the
/// overlap graph of `perm` at `{p, q}`, as labelled graphs.
pub fn check_commutation(perm: &Permutation, p: Pointer, q: Pointer) -> Result<bool> {
    commutation_sides(perm, p, q).map(|c| c.holds())
}
