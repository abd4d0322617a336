//! Backtracking isomorphism for small graphs and positions.
//!
//! Vertices are first coloured by (favourable flag, degree, sorted neighbour
//! degrees). Candidates must share a colour, and each extension is checked
//! against every vertex already mapped.

use std::collections::{BTreeMap, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{bit, bits, Graph, Label, Position};

pub const ISO_MAX_VERTICES: usize = 32;

pub type Mapping = BTreeMap<Label, Label>;

pub fn are_isomorphic(g1: &Graph, g2: &Graph) -> Result<Option<Mapping>> {
    search(g1, 0, g2, 0)
}

/// Isomorphism that also carries `p1.favorable` exactly onto `p2.favorable`.
pub fn positions_isomorphic(p1: &Position, p2: &Position) -> Result<Option<Mapping>> {
    search(&p1.graph, p1.favorable_mask(), &p2.graph, p2.favorable_mask())
}

/// True iff `map` is a bijection from `g1`'s vertices onto `g2`'s that preserves
/// adjacency and non-adjacency.
pub fn verify_mapping(g1: &Graph, g2: &Graph, map: &Mapping) -> bool {
    if g1.vertex_count() != g2.vertex_count() || map.len() != g1.vertex_count() {
        return false;
    }
    let mut image: Vec<usize> = Vec::with_capacity(map.len());
    for l in g1.labels() {
        match map.get(l).and_then(|t| g2.index_of(t.as_str())) {
            Some(j) => image.push(j),
            None => return false,
        }
    }
    let mut sorted = image.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != image.len() {
        return false;
    }
    (0..image.len()).all(|i| {
        (0..image.len()).all(|j| (g1.row(i) & bit(j) != 0) == (g2.row(image[i]) & bit(image[j]) != 0))
    })
}

fn colours(g: &Graph, marked: u128) -> Vec<Vec<usize>> {
    (0..g.vertex_count())
        .map(|i| {
            let mut nd: Vec<usize> = bits(g.row(i)).map(|j| g.degree(j)).collect();
            nd.sort_unstable();
            let mut key = vec![usize::from(marked & bit(i) != 0), g.degree(i)];
            key.extend(nd);
            key
        })
        .collect()
}

/// Order in which to assign g1's vertices: breadth-first from the vertex with
/// the rarest colour, so that most vertices have an already-mapped neighbour.
fn assignment_order(g: &Graph, colour: &[Vec<usize>]) -> Vec<usize> {
    let n = g.vertex_count();
    let rarity = |i: usize| colour.iter().filter(|c| **c == colour[i]).count();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let root = (0..n).filter(|&i| !placed[i]).min_by_key(|&i| (rarity(i), std::cmp::Reverse(g.degree(i)), i)).unwrap();
        let mut queue = VecDeque::from([root]);
        placed[root] = true;
        while let Some(v) = queue.pop_front() {
            order.push(v);
            let mut next: Vec<usize> = bits(g.row(v)).filter(|&w| !placed[w]).collect();
            next.sort_by_key(|&w| (rarity(w), w));
            for w in next {
                placed[w] = true;
                queue.push_back(w);
            }
        }
    }
    order
}

fn search(g1: &Graph, m1: u128, g2: &Graph, m2: u128) -> Result<Option<Mapping>> {
    for g in [g1, g2] {
        if g.vertex_count() > ISO_MAX_VERTICES {
            return Err(Error::BoundExceeded {
                what: "vertex count for isomorphism",
                actual: g.vertex_count(),
                limit: ISO_MAX_VERTICES,
            });
        }
    }
    if g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count() || m1.count_ones() != m2.count_ones() {
        return Ok(None);
    }
    let c1 = colours(g1, m1);
    let c2 = colours(g2, m2);
    let mut s1 = c1.clone();
    let mut s2 = c2.clone();
    s1.sort();
    s2.sort();
    if s1 != s2 {
        return Ok(None);
    }

    let order = assignment_order(g1, &c1);
    let candidates: Vec<Vec<usize>> =
        order.iter().map(|&v| (0..g2.vertex_count()).filter(|&w| c2[w] == c1[v]).collect()).collect();
    let mut image = vec![usize::MAX; g1.vertex_count()];
    let mut used: u128 = 0;
    if !extend(g1, g2, &order, &candidates, 0, &mut image, &mut used) {
        return Ok(None);
    }
    let map: Mapping = (0..g1.vertex_count()).map(|i| (g1.label(i).clone(), g2.label(image[i]).clone())).collect();
    assert!(verify_mapping(g1, g2, &map), "isomorphism search returned an invalid mapping");
    Ok(Some(map))
}

fn extend(
    g1: &Graph,
    g2: &Graph,
    order: &[usize],
    candidates: &[Vec<usize>],
    depth: usize,
    image: &mut [usize],
    used: &mut u128,
) -> bool {
    let Some(&v) = order.get(depth) else {
        return true;
    };
    for &w in &candidates[depth] {
        if *used & bit(w) != 0 {
            continue;
        }
        let consistent = order[..depth].iter().all(|&u| {
            let a = g1.row(v) & bit(u) != 0;
            let b = g2.row(w) & bit(image[u]) != 0;
            a == b
        });
        if !consistent {
            continue;
        }
        image[v] = w;
        *used |= bit(w);
        if extend(g1, g2, order, candidates, depth + 1, image, used) {
            return true;
        }
        *used &= !bit(w);
        image[v] = usize::MAX;
    }
    false
}
