//! Cycle machinery: Pósa rotations, cycles with interlacing chords, long
//! cycles, vertex-disjoint path pairs, and extension/shortening of chorded
//! cycles.

mod extend;
mod interlace;
mod longpath;
mod menger;
mod rotation;
mod shorten;

use thiserror::Error;

use crate::expander::ExpansionError;
use crate::graph::{GraphError, Vertex};

pub use extend::extend_via_disjoint_paths;
pub use interlace::{compact_interlaced_cycle, find_crossing_pair, find_interlaced_cycle, InterlacedCycle};
pub use longpath::{find_long_cycle, longest_path_heuristic, LongCycle};
pub(crate) use longpath::long_cycle_within;
pub use menger::{two_disjoint_paths, DisjointPathsError};
pub use rotation::{posa_closure, posa_closure_bounded, RotationClosure, RotationStep};
pub use shorten::{shorten_chorded_cycle, ShortenOutcome};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CycleError {
    #[error("graph is acyclic")]
    Acyclic,
    #[error("no cycle with interlacing chords found within the search budget")]
    NoInterlacedCycle,
    #[error("cycle of length {len} is shorter than the lower bound {lo}")]
    TooShort { len: usize, lo: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("no extension keeps a chord")]
    NoChordedExtension,
    #[error(transparent)]
    DisjointPaths(#[from] DisjointPathsError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Expansion(#[from] ExpansionError),
}

/// Position of every vertex on a sequence, `usize::MAX` when absent.
pub(crate) fn position_map(n: usize, seq: &[Vertex]) -> Vec<usize> {
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in seq.iter().enumerate() {
        pos[v] = i;
    }
    pos
}
