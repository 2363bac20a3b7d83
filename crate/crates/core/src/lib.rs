//! Matroid tools for locally repairable codes: rank oracles, lattices of
//! cyclic flats, the `(n, k, d, r, delta)` parameters, constructions from set
//! systems and weighted graphs, gammoid realizations and representations
//! over prime fields.

pub mod construct;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod gammoid;
pub mod gfrep;
pub mod io;
pub mod lrc;
pub mod matroid;
pub mod subset;
pub mod zlattice;

pub use error::{Error, Result};
pub use matroid::Matroid;
pub use subset::GroundSubset;
