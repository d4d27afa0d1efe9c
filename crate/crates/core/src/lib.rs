//! Certified edge-slide transformations of connected simple graphs.
//!
//! An edge slide replaces `{x, y}` by `{x, z}` whenever `x ~ y ~ z` and
//! `x` is not adjacent to `z`. Slides keep the vertex count, edge count and
//! connectivity. This crate builds explicit slide scripts that
//!
//! * turn any connected graph into any other with the same `(n, e)`, under a
//!   chosen vertex bijection ([`transform`]),
//! * drive a graph to an almost-regular degree sequence while strictly
//!   lowering its energy ([`regularize()`]),
//! * grow or shrink a graph while keeping its Euler characteristic, and then
//!   slide it onto a target ([`transform_euler`]).
//!
//! Every script is a [`MoveScript`] that can be replayed and checked
//! independently with [`replay`]. The [`oracle`] module enumerates small
//! graphs exhaustively to cross-check all of the above.

pub mod error;
pub mod euler;
pub mod format;
pub mod graph;
pub mod moves;
pub mod oracle;
pub mod prescribe;
pub mod regularize;
pub mod slides;

/// Vertex id; graphs use the dense range `0..n`.
pub type Vertex = usize;

pub use error::{Error, GraphError, MoveRejected, ParseError, Rejection, Result};
pub use euler::{
    collapse_to_order, expand_to_order, pendant_subdivide_equivalence, transform_euler,
};
pub use graph::{ComponentPartition, Edge, Graph, GraphStats, Path, VertexBijection};
pub use moves::{apply_move, apply_script, replay, replay_inspect, CheckLevel, Move, MoveScript};
pub use oracle::{
    enumerate_connected, reachability_census, slide_neighbors, CensusRow, SlideClass,
};
pub use prescribe::{raise_degree, raise_degree_in_tree, transform, LevelTrace, TransformPlan};
pub use regularize::{
    almost_regular_target, is_almost_regular, minimal_energy_oracle, regularize, DegreeTarget,
    Regularization, RegularizeStep,
};
pub use slides::{
    find_transfer_paths, interchange, move_edge, shuffle, slide_along_path, TransferPaths,
};
