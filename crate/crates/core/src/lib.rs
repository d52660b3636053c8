//! Singularity invariants of functions on affine toric varieties, computed
//! exactly from Newton polyhedra.

pub mod ambient;
pub mod error;
pub mod invariants;
pub mod io;
pub mod lattice;
pub mod newton;
pub mod nondegeneracy;
pub mod polyhedral;
pub mod toric_surface;
pub mod upoly;
pub mod volume;

pub use error::{Error, Result};
