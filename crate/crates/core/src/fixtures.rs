//! Small worked instances with known outcomes, shared by tests, the
//! verification suites and the demo.

use crate::graph::{Graph, Label};

const V7: [&str; 7] = ["v1", "v2", "v3", "v4", "v5", "v6", "v7"];
const V9: [&str; 9] = ["v1", "v2", "v3", "v4", "v5", "v6", "v7", "v8", "v9"];

/// Permutation used for the worked swap example, with the swapped pointers and the result.
pub const SWAP_SAMPLE: [usize; 8] = [3, 6, 5, 2, 4, 8, 1, 7];
pub const SWAP_SAMPLE_POINTERS: (usize, usize) = (3, 6);
pub const SWAP_SAMPLE_RESULT: [usize; 8] = [3, 4, 8, 1, 5, 2, 6, 7];

/// Permutation whose overlap graph is a path-like graph on four pointers.
pub const OVERLAP_SAMPLE: [usize; 5] = [3, 1, 4, 2, 5];
pub const OVERLAP_SAMPLE_EDGES: [(usize, usize); 3] = [(1, 3), (1, 4), (2, 4)];

/// gcds at `{v1, v2}` toggles several pairs among the masterlist vertices.
pub fn pivot_sample_before() -> Graph {
    let e = [
        ("v1", "v2"), ("v2", "v3"), ("v3", "v4"), ("v4", "v5"), ("v5", "v6"), ("v6", "v7"),
        ("v1", "v3"), ("v2", "v4"), ("v3", "v6"), ("v1", "v4"), ("v2", "v6"), ("v1", "v7"),
    ];
    Graph::new(V7, e).unwrap()
}

pub fn pivot_sample_after() -> Graph {
    let e = [("v3", "v4"), ("v4", "v5"), ("v5", "v6"), ("v3", "v7"), ("v4", "v6"), ("v4", "v7")];
    Graph::new(V7, e).unwrap()
}

/// gcds at `{v2, v7}` leaves four isolated vertices.
pub fn isolating_sample_before() -> Graph {
    let e = [
        ("v1", "v2"), ("v1", "v5"), ("v1", "v6"), ("v1", "v7"), ("v1", "v9"), ("v2", "v3"),
        ("v2", "v6"), ("v2", "v7"), ("v2", "v9"), ("v3", "v5"), ("v5", "v6"), ("v5", "v7"),
        ("v5", "v9"), ("v6", "v7"), ("v6", "v9"), ("v7", "v8"), ("v8", "v9"),
    ];
    Graph::new(V9, e).unwrap()
}

pub fn isolating_sample_after() -> Graph {
    let e = [("v1", "v3"), ("v1", "v6"), ("v1", "v8"), ("v3", "v6"), ("v3", "v8"), ("v6", "v8")];
    Graph::new(V9, e).unwrap()
}

/// Seven-vertex GCDS game with favourable set `{1,3,5,7}`.
pub fn game_sample() -> Graph {
    let e = [
        (1, 2), (1, 3), (1, 4), (1, 7), (2, 3), (2, 4),
        (2, 6), (3, 4), (3, 6), (4, 5), (5, 6), (6, 7),
    ];
    Graph::new(1..=7usize, e).unwrap()
}

pub fn game_sample_favorable() -> Vec<Label> {
    [1usize, 3, 5, 7].map(Label::from).to_vec()
}

/// A full play of [`game_sample`].
pub const GAME_SAMPLE_MOVES: [(usize, usize); 3] = [(2, 4), (1, 3), (6, 7)];

/// Positions reached after each move of [`GAME_SAMPLE_MOVES`].
pub fn game_sample_stages() -> [Graph; 3] {
    [
        Graph::new([1usize, 3, 5, 6, 7], [(3, 5), (1, 5), (6, 7), (1, 3), (1, 6), (1, 7)]).unwrap(),
        Graph::new([5usize, 6, 7], [(5, 6), (5, 7), (6, 7)]).unwrap(),
        Graph::new([5usize], Vec::<(usize, usize)>::new()).unwrap(),
    ]
}
