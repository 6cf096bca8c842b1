//! Cell complexes: 3-cells from a fixed catalog glued along faces.

mod catalog;
mod cell;
mod complex;
mod report;
mod skeleton;

pub(crate) use catalog::polyhedron_from_names;
pub use catalog::{find_iso, recognize, CellIso, ShapeId, ALL_SHAPES, DESTRUCTIBLE_SHAPES, TET_FACE_CYCLES};
pub use cell::{Cell, FaceMark, Ident, Side};
pub use complex::{build_complex, CellComplex, Debris, Glue};
pub use report::{classify_complex, ComponentClass, ComponentReport, ComponentSummary};
pub use skeleton::{cc_skeleton, CcEdge, CcSkeleton};
