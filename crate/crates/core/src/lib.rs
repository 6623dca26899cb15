//! Independence complexes of grid graphs and certified homotopy-preserving moves.

pub mod complex;
pub mod error;
pub mod euler;
pub mod family;
pub mod graph;
pub mod homology;
pub mod io;
pub mod morse_ops;
pub mod verify;

pub use error::{Error, Result};
pub use family::{FamilySpec, FamilyTag};
pub use graph::Graph;
