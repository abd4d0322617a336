//! Finite simple graphs with string labels, and the gcds / gcds₂ transformations.
//!
//! Vertices are kept sorted by [`Label`] order so that two graphs with the same
//! labelled vertex and edge sets compare equal. Adjacency is a `u128` row per
//! vertex, which caps graphs at [`MAX_VERTICES`].

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 128;

/// A vertex label. Ordered numerically when both labels are decimal integers,
/// otherwise as plain strings (numbers sort before non-numbers).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Label(String);

impl Label {
    pub fn new(s: impl Into<String>) -> Self {
        Label(s.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    fn numeric(&self) -> Option<&str> {
        let s = self.0.as_str();
        (!s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())).then(|| s.trim_start_matches('0'))
    }
}

impl Ord for Label {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.numeric(), other.numeric()) {
            (Some(a), Some(b)) => a.len().cmp(&b.len()).then_with(|| a.cmp(b)).then_with(|| self.0.cmp(&other.0)),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => self.0.cmp(&other.0),
        }
    }
}

impl PartialOrd for Label {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label(s.to_owned())
    }
}

impl From<String> for Label {
    fn from(s: String) -> Self {
        Label(s)
    }
}

impl From<usize> for Label {
    fn from(v: usize) -> Self {
        Label(v.to_string())
    }
}

impl From<&Label> for Label {
    fn from(l: &Label) -> Self {
        l.clone()
    }
}

/// Re-indexes `mask` after the vertices in `removed` are dropped from a graph on `n` vertices.
pub(crate) fn compress(mask: u128, removed: u128, n: usize) -> u128 {
    let mut out = 0;
    let mut k = 0;
    for i in 0..n {
        if removed & bit(i) != 0 {
            continue;
        }
        if mask & bit(i) != 0 {
            out |= bit(k);
        }
        k += 1;
    }
    out
}

#[inline]
pub(crate) fn bit(i: usize) -> u128 {
    1u128 << i
}

pub(crate) fn bits(mut mask: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

/// Finite simple undirected graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    labels: Vec<Label>,
    adj: Vec<u128>,
}

/// Neighbours of `x` other than `y`, and of `y` other than `x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MasterList {
    pub x: Label,
    pub y: Label,
    pub column_x: BTreeSet<Label>,
    pub column_y: BTreeSet<Label>,
}

impl MasterList {
    pub fn members(&self) -> BTreeSet<Label> {
        self.column_x.union(&self.column_y).cloned().collect()
    }

    /// Number of times `v` appears across both columns (0, 1 or 2).
    pub fn occurrences(&self, v: &Label) -> usize {
        usize::from(self.column_x.contains(v)) + usize::from(self.column_y.contains(v))
    }
}

/// Vertices other than `x`, `y` split by adjacency to `x` and `y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexClasses {
    pub x_only: BTreeSet<Label>,
    pub y_only: BTreeSet<Label>,
    pub both: BTreeSet<Label>,
    pub outside: BTreeSet<Label>,
}

impl Graph {
    pub fn empty() -> Self {
        Graph { labels: Vec::new(), adj: Vec::new() }
    }

    pub fn new<V, E, L>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator<Item = L>,
        E: IntoIterator<Item = (L, L)>,
        L: Into<Label>,
    {
        let mut labels: Vec<Label> = vertices.into_iter().map(Into::into).collect();
        labels.sort();
        if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph(format!("duplicate vertex {:?}", w[0].as_str())));
        }
        if labels.len() > MAX_VERTICES {
            return Err(Error::BoundExceeded { what: "vertex count", actual: labels.len(), limit: MAX_VERTICES });
        }
        let mut g = Graph { adj: vec![0; labels.len()], labels };
        for (a, b) in edges {
            let (a, b): (Label, Label) = (a.into(), b.into());
            let i = g.index_of(a.as_str()).ok_or_else(|| Error::UnknownVertex(a.0.clone()))?;
            let j = g.index_of(b.as_str()).ok_or_else(|| Error::UnknownVertex(b.0.clone()))?;
            if i == j {
                return Err(Error::InvalidGraph(format!("self-loop at {:?}", a.as_str())));
            }
            if g.adj[i] & bit(j) != 0 {
                return Err(Error::InvalidGraph(format!("duplicate edge {{{a}, {b}}}")));
            }
            g.adj[i] |= bit(j);
            g.adj[j] |= bit(i);
        }
        Ok(g)
    }

    /// Erdős–Rényi graph on labels `1..=n`.
    pub fn random<R: Rng + ?Sized>(n: usize, edge_probability: f64, rng: &mut R) -> Result<Self> {
        let mut edges = Vec::new();
        for a in 1..=n {
            for b in a + 1..=n {
                if rng.random_bool(edge_probability) {
                    edges.push((a, b));
                }
            }
        }
        Graph::new(1..=n, edges)
    }

    pub(crate) fn from_parts(labels: Vec<Label>, adj: Vec<u128>) -> Self {
        debug_assert!(labels.windows(2).all(|w| w[0] < w[1]));
        Graph { labels, adj }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn is_edgeless(&self) -> bool {
        self.adj.iter().all(|&r| r == 0)
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &Label {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.binary_search(&Label::from(label)).ok()
    }

    pub fn contains(&self, label: &str) -> bool {
        self.index_of(label).is_some()
    }

    pub(crate) fn row(&self, i: usize) -> u128 {
        self.adj[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].count_ones() as usize
    }

    pub fn has_edge(&self, a: &str, b: &str) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) => self.adj[i] & bit(j) != 0,
            _ => false,
        }
    }

    /// Index pairs `(i, j)`, `i < j`, in lexicographic order.
    pub fn edge_indices(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, &row) in self.adj.iter().enumerate() {
            out.extend(bits(row >> i >> 1).map(|k| (i, i + 1 + k)));
        }
        out
    }

    /// Edges as label pairs, smaller label first, in label order.
    pub fn edges(&self) -> Vec<(Label, Label)> {
        self.edge_indices()
            .into_iter()
            .map(|(i, j)| (self.labels[i].clone(), self.labels[j].clone()))
            .collect()
    }

    pub fn neighbors(&self, label: &str) -> Result<Vec<Label>> {
        let i = self.index_of(label).ok_or_else(|| Error::UnknownVertex(label.to_owned()))?;
        Ok(bits(self.adj[i]).map(|j| self.labels[j].clone()).collect())
    }

    pub fn isolated(&self) -> Vec<Label> {
        (0..self.labels.len()).filter(|&i| self.adj[i] == 0).map(|i| self.labels[i].clone()).collect()
    }

    /// Number of vertices with at least one incident edge.
    pub fn non_isolated_count(&self) -> usize {
        self.adj.iter().filter(|&&r| r != 0).count()
    }

    /// Drops the vertices whose bits are set in `mask`.
    pub(crate) fn without(&self, mask: u128) -> Graph {
        let keep: Vec<usize> = (0..self.labels.len()).filter(|&i| mask & bit(i) == 0).collect();
        let labels = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let adj = keep
            .iter()
            .map(|&i| {
                keep.iter().enumerate().fold(0u128, |row, (new_j, &old_j)| {
                    if self.adj[i] & bit(old_j) != 0 {
                        row | bit(new_j)
                    } else {
                        row
                    }
                })
            })
            .collect();
        Graph::from_parts(labels, adj)
    }

    /// Removes the named vertices and their edges.
    pub fn remove_vertices<'a>(&self, names: impl IntoIterator<Item = &'a str>) -> Result<Graph> {
        let mut mask = 0;
        for name in names {
            let i = self.index_of(name).ok_or_else(|| Error::UnknownVertex(name.to_owned()))?;
            mask |= bit(i);
        }
        Ok(self.without(mask))
    }

    /// Renames vertices through `f`; the result must have distinct labels.
    pub fn relabel(&self, mut f: impl FnMut(&Label) -> Label) -> Result<Graph> {
        let names: Vec<Label> = self.labels.iter().map(&mut f).collect();
        let edges = self.edge_indices().into_iter().map(|(i, j)| (names[i].clone(), names[j].clone()));
        Graph::new(names.clone(), edges)
    }

    fn edge_endpoints(&self, x: &str, y: &str) -> Result<(usize, usize)> {
        match (self.index_of(x), self.index_of(y)) {
            (Some(i), Some(j)) if self.adj[i] & bit(j) != 0 => Ok((i, j)),
            _ => Err(Error::NotAnEdge(x.to_owned(), y.to_owned())),
        }
    }

    fn names(&self, mask: u128) -> BTreeSet<Label> {
        bits(mask).map(|i| self.labels[i].clone()).collect()
    }

    pub fn masterlist(&self, x: &str, y: &str) -> Result<MasterList> {
        let (xi, yi) = self.edge_endpoints(x, y)?;
        Ok(MasterList {
            x: self.labels[xi].clone(),
            y: self.labels[yi].clone(),
            column_x: self.names(self.adj[xi] & !bit(yi)),
            column_y: self.names(self.adj[yi] & !bit(xi)),
        })
    }

    pub fn vertex_classes(&self, x: &str, y: &str) -> Result<VertexClasses> {
        let (xi, yi) = self.edge_endpoints(x, y)?;
        let nx = self.adj[xi] & !bit(yi);
        let ny = self.adj[yi] & !bit(xi);
        let all = (0..self.labels.len()).fold(0u128, |m, i| m | bit(i)) & !bit(xi) & !bit(yi);
        Ok(VertexClasses {
            x_only: self.names(nx & !ny),
            y_only: self.names(ny & !nx),
            both: self.names(nx & ny),
            outside: self.names(all & !(nx | ny)),
        })
    }

    /// gcds by the masterlist rules: isolate `x` and `y`; for every other pair
    /// of masterlist members decide by column membership and occurrence parity.
    pub fn apply_gcds(&self, x: &str, y: &str) -> Result<Graph> {
        let (xi, yi) = self.edge_endpoints(x, y)?;
        let list = self.masterlist(x, y)?;
        let members: Vec<usize> = list.members().iter().map(|l| self.index_of(l.as_str()).unwrap()).collect();

        let mut adj = self.adj.clone();
        for i in [xi, yi] {
            for j in bits(adj[i]) {
                adj[j] &= !bit(i);
            }
            adj[i] = 0;
        }
        for (a, &p) in members.iter().enumerate() {
            for &q in &members[a + 1..] {
                let (lp, lq) = (&self.labels[p], &self.labels[q]);
                let same_column = (list.column_x.contains(lp) && list.column_x.contains(lq))
                    || (list.column_y.contains(lp) && list.column_y.contains(lq));
                let toggle = if same_column {
                    (list.occurrences(lp) + list.occurrences(lq)) % 2 == 1
                } else {
                    true
                };
                if toggle {
                    adj[p] ^= bit(q);
                    adj[q] ^= bit(p);
                }
            }
        }
        Ok(Graph::from_parts(self.labels.clone(), adj))
    }

    /// gcds via neighbourhood classes: toggle every pair of masterlist members
    /// whose (adjacent-to-x, adjacent-to-y) patterns differ.
    pub fn apply_gcds_via_classes(&self, x: &str, y: &str) -> Result<Graph> {
        let (xi, yi) = self.edge_endpoints(x, y)?;
        let nx = self.adj[xi] & !bit(yi);
        let ny = self.adj[yi] & !bit(xi);
        let (only_x, only_y, both) = (nx & !ny, ny & !nx, nx & ny);
        let mut adj = self.adj.clone();
        for (i, row) in adj.iter_mut().enumerate() {
            let b = bit(i);
            *row &= !(bit(xi) | bit(yi));
            if b & only_x != 0 {
                *row ^= only_y | both;
            } else if b & only_y != 0 {
                *row ^= only_x | both;
            } else if b & both != 0 {
                *row ^= only_x | only_y;
            }
        }
        adj[xi] = 0;
        adj[yi] = 0;
        Ok(Graph::from_parts(self.labels.clone(), adj))
    }

    /// gcds followed by deleting `x`, `y` and every masterlist member left
    /// isolated, except a member that is alone in the masterlist.
    pub fn apply_gcds2(&self, x: &str, y: &str) -> Result<Graph> {
        let (xi, yi) = self.edge_endpoints(x, y)?;
        let (after, doomed) = self.gcds2_parts(xi, yi);
        Ok(after.without(doomed))
    }

    /// The gcds result on the full vertex set, plus the mask of vertices gcds₂ deletes.
    pub(crate) fn gcds2_parts(&self, xi: usize, yi: usize) -> (Graph, u128) {
        let x = self.labels[xi].as_str();
        let y = self.labels[yi].as_str();
        let after = self.apply_gcds_via_classes(x, y).expect("caller passes an edge");
        let members = (self.adj[xi] | self.adj[yi]) & !bit(xi) & !bit(yi);
        let mut doomed = bit(xi) | bit(yi);
        if members.count_ones() != 1 {
            doomed |= bits(members).filter(|&i| after.adj[i] == 0).fold(0, |m, i| m | bit(i));
        }
        (after, doomed)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph").field("vertices", &self.labels).field("edges", &self.edges()).finish()
    }
}

/// A graph together with ONE's favourable vertex set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Position {
    pub graph: Graph,
    pub favorable: BTreeSet<Label>,
}

impl Position {
    pub fn new<L: Into<Label>>(graph: Graph, favorable: impl IntoIterator<Item = L>) -> Result<Self> {
        let favorable: BTreeSet<Label> = favorable.into_iter().map(Into::into).collect();
        if let Some(bad) = favorable.iter().find(|l| !graph.contains(l.as_str())) {
            return Err(Error::UnknownVertex(bad.as_str().to_owned()));
        }
        Ok(Position { graph, favorable })
    }

    /// Favourable set as a bitmask over the graph's vertex indices.
    pub(crate) fn favorable_mask(&self) -> u128 {
        self.favorable.iter().filter_map(|l| self.graph.index_of(l.as_str())).fold(0, |m, i| m | bit(i))
    }
}

#[cfg(test)]
mod tests {
    use crate::fixtures::*;
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn set(v: &[&str]) -> BTreeSet<Label> {
        v.iter().map(|&s| Label::from(s)).collect()
    }

    fn triangle() -> Graph {
        Graph::new(["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")]).unwrap()
    }

    #[test]
    fn label_order_is_numeric_aware() {
        let mut v: Vec<Label> = ["10", "2", "b", "1", "a"].iter().map(|&s| s.into()).collect();
        v.sort();
        let got: Vec<&str> = v.iter().map(Label::as_str).collect();
        assert_eq!(got, ["1", "2", "10", "a", "b"]);
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert!(matches!(Graph::new(["a", "a"], Vec::<(&str, &str)>::new()), Err(Error::InvalidGraph(_))));
        assert!(matches!(Graph::new(["a"], [("a", "a")]), Err(Error::InvalidGraph(_))));
        assert!(matches!(Graph::new(["a"], [("a", "z")]), Err(Error::UnknownVertex(_))));
        assert!(matches!(Graph::new(["a", "b"], [("a", "b"), ("b", "a")]), Err(Error::InvalidGraph(_))));
    }

    #[test]
    fn masterlist_examples() {
        let m = pivot_sample_before().masterlist("v1", "v2").unwrap();
        assert_eq!(m.column_x, set(&["v3", "v4", "v7"]));
        assert_eq!(m.column_y, set(&["v6", "v4", "v3"]));
        let m = isolating_sample_before().masterlist("v2", "v7").unwrap();
        assert_eq!(m.column_x, set(&["v1", "v3", "v6", "v9"]));
        assert_eq!(m.column_y, set(&["v1", "v5", "v6", "v8"]));
        let m = triangle().masterlist("a", "b").unwrap();
        assert_eq!((m.column_x, m.column_y), (set(&["c"]), set(&["c"])));
        assert_eq!(pivot_sample_before().masterlist("v1", "v5"), Err(Error::NotAnEdge("v1".into(), "v5".into())));
    }

    #[test]
    fn gcds_sample_fixtures() {
        assert_eq!(pivot_sample_before().apply_gcds("v1", "v2").unwrap(), pivot_sample_after());
        assert_eq!(pivot_sample_before().apply_gcds_via_classes("v1", "v2").unwrap(), pivot_sample_after());
        let after7 = isolating_sample_before().apply_gcds("v2", "v7").unwrap();
        assert_eq!(after7, isolating_sample_after());
        assert_eq!(after7.isolated().len(), 4 + 1); // v2, v5, v7, v9 new; v4 already isolated
    }

    #[test]
    fn gcds_on_path() {
        let path = Graph::new(["a", "b", "c"], [("a", "b"), ("b", "c")]).unwrap();
        let out = path.apply_gcds("a", "b").unwrap();
        assert!(out.is_edgeless());
        assert_eq!(out.vertex_count(), 3);
        let out = triangle().apply_gcds_via_classes("a", "b").unwrap();
        assert!(out.is_edgeless());
    }

    #[test]
    fn class_examples() {
        let c = pivot_sample_before().vertex_classes("v1", "v2").unwrap();
        assert_eq!(c.x_only, set(&["v7"]));
        assert_eq!(c.y_only, set(&["v6"]));
        assert_eq!(c.both, set(&["v3", "v4"]));
        assert_eq!(c.outside, set(&["v5"]));
        let c = triangle().vertex_classes("a", "b").unwrap();
        assert_eq!(c.both, set(&["c"]));
        let c = game_sample().vertex_classes("2", "4").unwrap();
        assert_eq!(c.both, set(&["1", "3"]));
        assert_eq!(c.x_only, set(&["6"]));
        assert_eq!(c.y_only, set(&["5"]));
        assert_eq!(c.outside, set(&["7"]));
    }

    #[test]
    fn gcds2_examples() {
        let b = game_sample().apply_gcds2("2", "4").unwrap();
        let want = Graph::new([1, 3, 5, 6, 7], [(3, 5), (1, 5), (6, 7), (1, 3), (1, 6), (1, 7)]).unwrap();
        assert_eq!(b, want);

        let c = Graph::new([5, 6, 7], [(5, 6), (6, 7), (5, 7)]).unwrap();
        let d = c.apply_gcds2("6", "7").unwrap();
        assert_eq!(d, Graph::new([5usize], Vec::<(usize, usize)>::new()).unwrap());

        let g = isolating_sample_before().apply_gcds2("v2", "v7").unwrap();
        let kept: Vec<&str> = g.labels().iter().map(Label::as_str).collect();
        assert_eq!(kept, ["v1", "v3", "v4", "v6", "v8"]);
    }

    #[test]
    fn gcds_errors_on_non_edges() {
        let g = game_sample();
        assert!(matches!(g.apply_gcds("5", "7"), Err(Error::NotAnEdge(..))));
        assert!(matches!(g.apply_gcds2("1", "99"), Err(Error::NotAnEdge(..))));
        assert!(matches!(g.vertex_classes("5", "7"), Err(Error::NotAnEdge(..))));
    }

    #[test]
    fn routes_agree_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let n = rng.random_range(2..=10);
            let g = Graph::random(n, 0.5, &mut rng).unwrap();
            for (x, y) in g.edges() {
                let a = g.apply_gcds(x.as_str(), y.as_str()).unwrap();
                let b = g.apply_gcds_via_classes(x.as_str(), y.as_str()).unwrap();
                assert_eq!(a, b, "{g:?} on {{{x},{y}}}");
            }
        }
    }

    #[test]
    fn position_requires_known_favorable() {
        assert!(Position::new(triangle(), ["a"]).is_ok());
        assert!(matches!(Position::new(triangle(), ["z"]), Err(Error::UnknownVertex(_))));
    }
}
