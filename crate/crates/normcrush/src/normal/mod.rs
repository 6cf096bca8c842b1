//! Normal surfaces in standard triangle-quad coordinates.

mod enumerate;
mod surface;
mod vector;

pub use enumerate::{enumerate_bounded, DEFAULT_WORK_CAP};
pub use surface::{surface_invariants, weight, Arc, Disc, DiscComplex, DiscKind, SurfaceComponent, SurfaceReport};
pub use vector::{
    check_admissible, is_admissible, quad_crosses, quad_first_side, quad_pairing, AdmissibilityReport,
    NormalVector, Violation, QUAD_NAMES, QUAD_SIDES,
};
