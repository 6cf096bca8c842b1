//! Cutting along a normal surface, crushing it and flattening the result.

mod cut;
mod flatten;
mod moves;
mod ndcrush;
mod pipeline;
mod region;

pub use cut::{cut_along, CellOrigin, CutComplex, Remnant};
pub use flatten::{flatten_all, replay, Flattened, MoveTrace, Rollback, TRACE_FORMAT};
pub use moves::{apply_move, find_moves, stamp, ApplicableMove, CaseTag, Deltas, LinkSummary, Location, MoveKind, TraceEntry};
pub use ndcrush::{crushed_shape, nondestructive_crush};
pub use pipeline::{check_theorem1, crush_pipeline, crushed_complex, ComponentDiagnostics, CrushOptions, CrushResult};
pub use region::{choose_region, region_obstruction, Selector};
