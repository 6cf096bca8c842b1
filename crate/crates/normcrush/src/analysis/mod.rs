//! Topological oracles: integer homology, sphere certificates and bigon paths.

mod bigon;
mod certificate;
mod homology;
pub mod snf;

pub use bigon::{enumerate_bigon_paths, BigonPath, PathPlacement};
pub use certificate::{euler_characteristic, sphere_certificate, Certificate};
pub use homology::{homology_h1, HomologyGroup};
