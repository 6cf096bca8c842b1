//! Crushing normal surfaces in generalized 3-manifold triangulations.
//!
//! The pipeline cuts a triangulation along a normal surface, collapses each
//! remnant of the surface to a point, and flattens the resulting footballs,
//! purses and pillows by atomic moves until only tetrahedra remain. Every move
//! is classified and logged, and the results can be checked against
//! independent oracles (skeleton classification, integer homology, brute-force
//! surface enumeration).

pub mod analysis;
pub mod cellcx;
pub mod cli;
pub mod crush;
mod error;
pub mod normal;
pub mod tri_core;
mod uf;

pub use error::{Error, Result};
