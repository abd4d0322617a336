//! Context directed swaps on permutations, their overlap graphs, and exact
//! solvers for the two-player games played on them.

pub mod cache;
pub mod error;
pub mod families;
pub mod fixtures;
pub mod games;
pub mod graph;
pub mod io;
pub mod iso;
pub mod overlap;
pub mod perm;
pub mod pile;
pub mod verify;

pub use error::{Error, Result};
pub use families::{bound_prediction, gen_alpha, gen_chain, gen_favorable, tight_instance, BoundPrediction, Verdict};
pub use games::{CdsState, GcdsState, NpClass, Player, SolveReport, Solver, SolverConfig};
pub use graph::{Graph, Label, Position};
pub use overlap::overlap_graph;
pub use perm::{Permutation, Pointer};
pub use pile::{strategic_pile, StrategicPile};
