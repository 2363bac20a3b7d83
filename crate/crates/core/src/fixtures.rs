//! Reference instances shipped with the crate.

use crate::construct::{SetSystem, WeightedGraph};
use crate::field::FieldMatrix;
use crate::io;
use crate::zlattice::CyclicFlatLattice;

pub const OVERLAPPING_TRIPLE_MATRIX: &str = include_str!("../fixtures/overlapping_triple_matrix.json");
pub const OVERLAPPING_TRIPLE_SYSTEM: &str = include_str!("../fixtures/overlapping_triple_system.json");
pub const OVERLAPPING_TRIPLE_LATTICE: &str = include_str!("../fixtures/overlapping_triple_lattice.json");
pub const TWO_PATHS_GRAPH: &str = include_str!("../fixtures/two_paths_graph.json");
pub const TWO_PATHS_SYSTEM: &str = include_str!("../fixtures/two_paths_system.json");
pub const THETA_GRAPH: &str = include_str!("../fixtures/theta_graph.json");
pub const DISJOINT_BLOCKS_SYSTEM: &str = include_str!("../fixtures/disjoint_blocks_system.json");

/// `(k, r, delta)` used with [`two_paths_graph`].
pub const TWO_PATHS_KRD: (usize, usize, usize) = (14, 4, 2);
/// `(k, r, delta)` used with [`theta_graph`].
pub const THETA_KRD: (usize, usize, usize) = (19, 9, 5);

/// 6 x 12 matrix over GF(5) whose matroid has three overlapping rank-3
/// atoms; `(n, k, d) = (12, 6, 3)` with `(3, 3)`-locality.
pub fn overlapping_triple_matrix() -> FieldMatrix {
    io::matrix_from_json(OVERLAPPING_TRIPLE_MATRIX).expect("fixture parses")
}

pub fn overlapping_triple_system() -> SetSystem {
    io::set_system_from_json(OVERLAPPING_TRIPLE_SYSTEM).expect("fixture parses")
}

pub fn overlapping_triple_lattice() -> CyclicFlatLattice {
    io::lattice_from_json(OVERLAPPING_TRIPLE_LATTICE).expect("fixture parses")
}

/// Paths 0-1-2 and 3-4 plus an isolated vertex, unit weights.
pub fn two_paths_graph() -> WeightedGraph {
    io::graph_from_json(TWO_PATHS_GRAPH).expect("fixture parses")
}

/// The six blocks of [`two_paths_graph`] written out, `k = 14`.
pub fn two_paths_system() -> SetSystem {
    io::set_system_from_json(TWO_PATHS_SYSTEM).expect("fixture parses")
}

/// A 4-cycle of weight 4, a two-edge path of weights 4 and 1, and four
/// isolated vertices; gives a `(122, 19, 96, 9, 5)` matroid.
pub fn theta_graph() -> WeightedGraph {
    io::graph_from_json(THETA_GRAPH).expect("fixture parses")
}

/// Three disjoint 4-sets with ranks 3, 3, 2 and `k = 7`.
pub fn disjoint_blocks_system() -> SetSystem {
    io::set_system_from_json(DISJOINT_BLOCKS_SYSTEM).expect("fixture parses")
}
