//! Reference implementations written directly from the definitions, on plain
//! vectors and string sets. They share no code with the library.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

pub type Edge = (String, String);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct G {
    pub vertices: BTreeSet<String>,
    pub edges: BTreeSet<Edge>,
}

fn edge(a: &str, b: &str) -> Edge {
    if a <= b {
        (a.to_owned(), b.to_owned())
    } else {
        (b.to_owned(), a.to_owned())
    }
}

impl G {
    pub fn new<I, J, S>(vertices: I, edges: J) -> G
    where
        I: IntoIterator<Item = S>,
        J: IntoIterator<Item = (S, S)>,
        S: ToString,
    {
        G {
            vertices: vertices.into_iter().map(|v| v.to_string()).collect(),
            edges: edges.into_iter().map(|(a, b)| edge(&a.to_string(), &b.to_string())).collect(),
        }
    }

    pub fn has(&self, a: &str, b: &str) -> bool {
        self.edges.contains(&edge(a, b))
    }

    pub fn neighbours(&self, v: &str) -> Vec<String> {
        self.vertices.iter().filter(|w| w.as_str() != v && self.has(v, w)).cloned().collect()
    }

    pub fn from_lib(g: &cds_core::Graph) -> G {
        G::new(
            g.labels().iter().map(|l| l.as_str().to_owned()),
            g.edges().into_iter().map(|(a, b)| (a.as_str().to_owned(), b.as_str().to_owned())),
        )
    }
}

fn pos(e: &[usize], v: usize) -> usize {
    e.iter().position(|&x| x == v).unwrap()
}

/// Pointer occurrences in reading order: each entry `k` contributes its tail
/// `k-1` and then its head `k`, skipping the non-pointers `0` and `n`.
pub fn occurrence_sequence(e: &[usize]) -> Vec<usize> {
    let n = e.len();
    let mut out = Vec::new();
    for &k in e {
        if k > 1 {
            out.push(k - 1);
        }
        if k < n {
            out.push(k);
        }
    }
    out
}

pub fn interlock(e: &[usize], p: usize, q: usize) -> bool {
    let seq: Vec<usize> = occurrence_sequence(e).into_iter().filter(|&c| c == p || c == q).collect();
    seq.len() == 4 && seq[0] != seq[1] && seq[0] == seq[2] && seq[1] == seq[3]
}

/// The swap, by matching the four written templates with `p = (x, x+1)` and
/// `q = (y, y+1)` in both role assignments. Returns every distinct result.
pub fn cds_candidates(e: &[usize], p: usize, q: usize) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    if !interlock(e, p, q) {
        return out;
    }
    for (x, y) in [(p, q), (q, p)] {
        let (px, px1, py, py1) = (pos(e, x), pos(e, x + 1), pos(e, y), pos(e, y + 1));
        let cat = |parts: &[&[usize]]| parts.concat();
        // 1: [.. (x+1 .. y) .. x (f..g) y+1 ..]
        if px1 <= py && py < px && px < py1 {
            out.insert(cat(&[&e[..px1], &e[px + 1..py1], &e[py + 1..=px], &e[px1..=py], &e[py1..]]));
        }
        // 2: [.. x (b .. y) .. (x+1 .. g) y+1 ..]
        if px < py && py < px1 && px1 < py1 {
            out.insert(cat(&[&e[..=px], &e[px1..py1], &e[py + 1..px1], &e[px + 1..=py], &e[py1..]]));
        }
        // 3: [.. x (b .. c) y+1 .. (x+1 .. y) h ..]
        if px < py1 && py1 < px1 && px1 <= py {
            out.insert(cat(&[&e[..=px], &e[px1..=py], &e[py1..px1], &e[px + 1..py1], &e[py + 1..]]));
        }
        // 4: [.. (x+1 .. c) y+1 .. x (f .. y) h ..]
        if px1 < py1 && py1 <= px && px < py {
            out.insert(cat(&[&e[..px1], &e[px + 1..=py], &e[py1..=px], &e[px1..py1], &e[py + 1..]]));
        }
    }
    out
}

pub fn cds(e: &[usize], p: usize, q: usize) -> Option<Vec<usize>> {
    let c = cds_candidates(e, p, q);
    assert!(c.len() <= 1, "templates disagree on {e:?} at {p},{q}: {c:?}");
    c.into_iter().next()
}

pub fn moves(e: &[usize]) -> Vec<(usize, usize)> {
    let n = e.len();
    let mut out = Vec::new();
    for p in 1..n {
        for q in p + 1..n {
            if interlock(e, p, q) {
                out.push((p, q));
            }
        }
    }
    out
}

/// Fixed-point code: `Some(i - 1)` for the rotation starting at `i > 1`, `None` for the identity.
pub fn fixed_code(e: &[usize]) -> Option<usize> {
    let n = e.len();
    for (i, &v) in e.iter().enumerate() {
        assert_eq!(v, (e[0] - 1 + i) % n + 1, "{e:?} is not a rotation");
    }
    (e[0] > 1).then(|| e[0] - 1)
}

pub fn overlap(e: &[usize]) -> G {
    G::new(1..e.len(), moves(e))
}

/// All fixed points reachable by swaps: (identity reachable, codes reachable).
pub fn reachable(e: &[usize], memo: &mut HashMap<Vec<usize>, (bool, BTreeSet<usize>)>) -> (bool, BTreeSet<usize>) {
    if let Some(r) = memo.get(e) {
        return r.clone();
    }
    let ms = moves(e);
    let r = if ms.is_empty() {
        match fixed_code(e) {
            None => (true, BTreeSet::new()),
            Some(c) => (false, BTreeSet::from([c])),
        }
    } else {
        let mut acc = (false, BTreeSet::new());
        for (p, q) in ms {
            let (id, codes) = reachable(&cds(e, p, q).unwrap(), memo);
            acc.0 |= id;
            acc.1.extend(codes);
        }
        acc
    };
    memo.insert(e.to_vec(), r.clone());
    r
}

/// Number of alternating cycles, walking black then dotted edges.
pub fn alternating_cycle_count(e: &[usize]) -> usize {
    let n = e.len();
    let mut ext = vec![0];
    ext.extend_from_slice(e);
    ext.push(n + 1);
    // black edge from ext[i] to ext[i-1]
    let mut black = vec![usize::MAX; n + 2];
    for i in 1..ext.len() {
        black[ext[i]] = ext[i - 1];
    }
    // dotted edge from v to v + 1 for 0 <= v <= n
    let mut seen = vec![false; n + 1];
    let mut cycles = 0;
    for start in 0..=n {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut v = start;
        while !seen[v] {
            seen[v] = true;
            v = black[v + 1];
        }
    }
    cycles
}

/// Column x, column y and occurrence counts of the two-column list.
pub fn gcds(g: &G, x: &str, y: &str) -> G {
    assert!(g.has(x, y));
    let col_x: BTreeSet<String> = g.neighbours(x).into_iter().filter(|v| v != y).collect();
    let col_y: BTreeSet<String> = g.neighbours(y).into_iter().filter(|v| v != x).collect();
    let count = |v: &str| col_x.contains(v) as usize + col_y.contains(v) as usize;
    let mut edges = BTreeSet::new();
    let rest: Vec<&String> = g.vertices.iter().filter(|v| *v != x && *v != y).collect();
    for (i, p) in rest.iter().enumerate() {
        for q in &rest[i + 1..] {
            let had = g.has(p, q);
            let now = if count(p) == 0 || count(q) == 0 {
                had
            } else {
                let same_column = (col_x.contains(*p) && col_x.contains(*q)) || (col_y.contains(*p) && col_y.contains(*q));
                if !same_column {
                    !had
                } else if (count(p) + count(q)) % 2 == 0 {
                    had
                } else {
                    !had
                }
            };
            if now {
                edges.insert(edge(p, q));
            }
        }
    }
    G { vertices: g.vertices.clone(), edges }
}

pub fn gcds2(g: &G, x: &str, y: &str) -> G {
    let h = gcds(g, x, y);
    let listed: BTreeSet<String> = g.neighbours(x).into_iter().chain(g.neighbours(y)).filter(|v| v != x && v != y).collect();
    let lone = listed.len() == 1;
    let isolated = |v: &str| !h.edges.iter().any(|(a, b)| a == v || b == v);
    let vertices: BTreeSet<String> = h
        .vertices
        .iter()
        .filter(|v| *v != x && *v != y)
        .filter(|v| !(listed.contains(*v) && !lone && isolated(v)))
        .cloned()
        .collect();
    G { vertices, edges: h.edges }
}

/// Plain minimax for the graph game; favourable labels as strings.
pub fn gcds_winner(g: &G, fav: &BTreeSet<String>, one_to_move: bool, memo: &mut BTreeMap<(Vec<String>, Vec<Edge>, bool), bool>) -> bool {
    if g.edges.is_empty() {
        return !g.vertices.is_empty() && g.vertices.iter().all(|v| fav.contains(v));
    }
    let key = (g.vertices.iter().cloned().collect(), g.edges.iter().cloned().collect(), one_to_move);
    if let Some(&w) = memo.get(&key) {
        return w;
    }
    let outcomes = g.edges.iter().map(|(a, b)| gcds_winner(&gcds2(g, a, b), fav, !one_to_move, memo));
    let one_wins = if one_to_move { outcomes.into_iter().any(|w| w) } else { outcomes.into_iter().all(|w| w) };
    memo.insert(key, one_wins);
    one_wins
}

/// Plain minimax for the permutation game. Returns true iff ONE wins.
pub fn cds_winner(e: &[usize], fav: &BTreeSet<usize>, one_to_move: bool, memo: &mut HashMap<(Vec<usize>, bool), bool>) -> bool {
    let ms = moves(e);
    if ms.is_empty() {
        return fixed_code(e).is_some_and(|c| fav.contains(&c));
    }
    if let Some(&w) = memo.get(&(e.to_vec(), one_to_move)) {
        return w;
    }
    let mut outcomes = ms.into_iter().map(|(p, q)| cds_winner(&cds(e, p, q).unwrap(), fav, !one_to_move, memo));
    let one_wins = if one_to_move { outcomes.any(|w| w) } else { outcomes.all(|w| w) };
    memo.insert((e.to_vec(), one_to_move), one_wins);
    one_wins
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, left: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..left.len() {
            let v = left.remove(i);
            prefix.push(v);
            go(prefix, left, out);
            prefix.pop();
            left.insert(i, v);
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut (1..=n).collect(), &mut out);
    out
}

/// Triangle chain straight from the recursive description.
pub fn chain(m: usize) -> G {
    let mut vertices: Vec<usize> = vec![1, 2, 3];
    let mut edges = vec![(1, 2), (1, 3), (2, 3)];
    for k in 1..m {
        let (a, b, c) = (2 * k + 1, 2 * k + 2, 2 * k + 3);
        vertices.extend([b, c]);
        edges.extend([(a, b), (a, c), (b, c)]);
    }
    G::new(vertices, edges)
}

/// Brute-force isomorphism test by degree-sorted backtracking on string graphs.
pub fn isomorphic(a: &G, b: &G) -> bool {
    if a.vertices.len() != b.vertices.len() || a.edges.len() != b.edges.len() {
        return false;
    }
    let av: Vec<&String> = a.vertices.iter().collect();
    let bv: Vec<&String> = b.vertices.iter().collect();
    let deg = |g: &G, v: &str| g.neighbours(v).len();
    fn extend(a: &G, b: &G, av: &[&String], bv: &[&String], map: &mut Vec<usize>, used: &mut Vec<bool>, deg: &dyn Fn(&G, &str) -> usize) -> bool {
        let i = map.len();
        if i == av.len() {
            return true;
        }
        for j in 0..bv.len() {
            if used[j] || deg(a, av[i]) != deg(b, bv[j]) {
                continue;
            }
            if (0..i).all(|k| a.has(av[i], av[k]) == b.has(bv[j], bv[map[k]])) {
                map.push(j);
                used[j] = true;
                if extend(a, b, av, bv, map, used, deg) {
                    return true;
                }
                map.pop();
                used[j] = false;
            }
        }
        false
    }
    extend(a, b, &av, &bv, &mut Vec::new(), &mut vec![false; bv.len()], &deg)
}
