use super::moves::{apply_move, find_moves, ApplicableMove, MoveKind, TraceEntry};
use crate::cellcx::{recognize, CellComplex, ShapeId};
use crate::tri_core::Triangulation;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

pub const TRACE_FORMAT: &str = "trace-v1";

/// A bigon-face choice that was tried and undone because it left the catalog.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rollback {
    /// Index of the move that was eventually made at this step.
    pub step: usize,
    pub cell: usize,
    pub face: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveTrace {
    pub format: String,
    pub moves: Vec<TraceEntry>,
    #[serde(default)]
    pub rollbacks: Vec<Rollback>,
}

impl Default for MoveTrace {
    fn default() -> Self {
        MoveTrace { format: TRACE_FORMAT.into(), moves: Vec::new(), rollbacks: Vec::new() }
    }
}

impl MoveTrace {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace serializes")
    }

    pub fn from_json(text: &str) -> Result<MoveTrace> {
        let t: MoveTrace = serde_json::from_str(text).map_err(|e| Error::Format(format!("trace-v1: {e}")))?;
        if t.format != TRACE_FORMAT {
            return Err(Error::Format(format!("expected format \"{TRACE_FORMAT}\", found {:?}", t.format)));
        }
        Ok(t)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flattened {
    pub triangulation: Triangulation,
    /// Benign mark of each output tetrahedron.
    pub benign: Vec<bool>,
    pub trace: MoveTrace,
    /// Initial number of 3-cells plus 2-cells, which bounds the move count.
    pub move_bound: usize,
}

fn measure(c: &CellComplex) -> (usize, usize) {
    (c.len(), c.two_cell_count())
}

fn check_catalog(c: &CellComplex) -> Result<()> {
    for (i, cell) in c.cells.iter().enumerate() {
        let shape = cell.shape.or_else(|| recognize(cell).map(|(s, _)| s));
        if !shape.is_some_and(|s| s.is_destructible()) {
            return Err(Error::PropertyViolation(format!("cell {i} is outside the destructible catalog ({shape:?})")));
        }
    }
    Ok(())
}

/// Flattens every pillow and bigon until only tetrahedra remain: tri pillows
/// first, then bigon pillows, then bigon faces in order, undoing any bigon
/// choice that would leave the catalog.
pub fn flatten_all(c: &CellComplex) -> Result<Flattened> {
    let mut cur = c.clone();
    for i in 0..cur.len() {
        let shape = cur.canonicalize_cell(i)?;
        if !shape.is_destructible() {
            return Err(Error::InvalidInput(format!("cell {i} is a {}, not a destructible cell", shape.name())));
        }
    }
    cur.validate()?;
    let initial_benign = cur.benign_flags();
    let mut origin: Vec<usize> = (0..cur.len()).collect();
    let move_bound = cur.len() + cur.two_cell_count();
    let mut trace = MoveTrace::default();
    loop {
        let moves = find_moves(&cur);
        if moves.is_empty() {
            break;
        }
        let step = trace.moves.len();
        let pillow = moves.iter().find(|m| m.kind == MoveKind::TriPillow).or_else(|| moves.iter().find(|m| m.kind == MoveKind::BigonPillow));
        let (next, entry, made) = match pillow {
            Some(m) => {
                let (next, entry) = apply_move(&cur, m)?;
                (next, entry, *m)
            }
            None => {
                let mut found: Option<(CellComplex, TraceEntry, ApplicableMove)> = None;
                for m in &moves {
                    match apply_move(&cur, m) {
                        Ok((next, entry)) => {
                            found = Some((next, entry, *m));
                            break;
                        }
                        Err(Error::CatalogEscape(reason)) => trace.rollbacks.push(Rollback {
                            step,
                            cell: m.cell,
                            face: m.face.unwrap_or(0),
                            reason,
                        }),
                        Err(e) => return Err(e),
                    }
                }
                found.ok_or_else(|| {
                    Error::SchedulerStuck(format!("all {} bigon choices leave the catalog at move {step}", moves.len()))
                })?
            }
        };
        if measure(&next) >= measure(&cur) {
            return Err(Error::PropertyViolation(format!(
                "move {step} did not decrease (#3-cells, #2-cells): {:?} -> {:?}",
                measure(&cur),
                measure(&next)
            )));
        }
        check_catalog(&next)?;
        if made.kind != MoveKind::BigonFace {
            origin.remove(made.cell);
        }
        for (i, cell) in next.cells.iter().enumerate() {
            if cell.benign != initial_benign[origin[i]] {
                return Err(Error::PropertyViolation(format!("move {step} changed the benign mark of cell {i}")));
            }
        }
        trace.moves.push(entry);
        if trace.moves.len() > move_bound {
            return Err(Error::PropertyViolation(format!("more than {move_bound} moves")));
        }
        cur = next;
    }
    if let Some(i) = cur.cells.iter().position(|x| x.shape != Some(ShapeId::Tet)) {
        return Err(Error::SchedulerStuck(format!("no moves left but cell {i} is not a tetrahedron")));
    }
    Ok(Flattened { triangulation: cur.to_triangulation()?, benign: cur.benign_flags(), trace, move_bound })
}

/// Re-applies the moves of `trace` to `c`, checking each entry is reproduced.
pub fn replay(c: &CellComplex, trace: &MoveTrace) -> Result<CellComplex> {
    let mut cur = c.clone();
    cur.canonicalize()?;
    for (i, entry) in trace.moves.iter().enumerate() {
        let m = find_moves(&cur)
            .into_iter()
            .find(|m| m.kind == entry.kind && m.cell == entry.location.cell && m.face == entry.location.face)
            .ok_or_else(|| Error::InvalidInput(format!("move {i} does not apply")))?;
        let (next, got) = apply_move(&cur, &m)?;
        if got != *entry {
            return Err(Error::InvalidInput(format!("move {i} reproduces a different trace entry")));
        }
        cur = next;
    }
    Ok(cur)
}
