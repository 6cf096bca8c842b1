use super::vector::{quad_pairing, NormalVector};
use crate::tri_core::Triangulation;
use crate::{Error, Result};

pub const DEFAULT_WORK_CAP: u64 = 10_000_000;

/// One matching equation: the sum of coordinates `lhs` equals that of `rhs`.
#[derive(Debug, Clone, Copy)]
struct Equation {
    lhs: [usize; 2],
    rhs: [usize; 2],
}

fn equations(t: &Triangulation) -> Vec<Equation> {
    let mut out = Vec::new();
    for tet in 0..t.tet_count() {
        for x in 0..4 {
            let Some(g) = t.gluing(tet, x) else { continue };
            let y = g.perm.apply(x);
            if (tet, x) > (g.tet, y) {
                continue;
            }
            for c in (0..4).filter(|&c| c != x) {
                let d = g.perm.apply(c);
                out.push(Equation {
                    lhs: [7 * tet + c, 7 * tet + 4 + quad_pairing(c, x)],
                    rhs: [7 * g.tet + d, 7 * g.tet + 4 + quad_pairing(d, y)],
                });
            }
        }
    }
    out
}

/// All admissible vectors with every coordinate at most `k`, in
/// lexicographic order. Refuses with `WorkCapExceeded` once more than
/// `work_cap` search nodes have been visited.
pub fn enumerate_bounded(t: &Triangulation, k: u64, work_cap: u64) -> Result<Vec<NormalVector>> {
    let n = 7 * t.tet_count();
    let eqs = equations(t);
    // Each equation is checked as soon as its last coordinate is fixed.
    let mut due: Vec<Vec<Equation>> = vec![Vec::new(); n];
    for e in eqs {
        let last = e.lhs.iter().chain(e.rhs.iter()).copied().max().unwrap();
        due[last].push(e);
    }
    let mut coords = vec![0u64; n];
    let mut out = Vec::new();
    let mut work = 0u64;
    if n == 0 {
        return Ok(vec![NormalVector::new(Vec::new())]);
    }
    // Iterative depth-first search; `depth` is the coordinate being set.
    let mut depth = 0usize;
    let mut next = vec![0u64; n];
    loop {
        if next[depth] > k {
            next[depth] = 0;
            coords[depth] = 0;
            if depth == 0 {
                break;
            }
            depth -= 1;
            continue;
        }
        let val = next[depth];
        next[depth] += 1;
        work += 1;
        if work > work_cap {
            return Err(Error::WorkCapExceeded(work_cap));
        }
        coords[depth] = val;
        let slot = depth % 7;
        if slot >= 4 && val > 0 {
            let base = depth - slot;
            if (4..slot).any(|s| coords[base + s] > 0) {
                // Larger values fail the same way.
                next[depth] = k + 1;
                continue;
            }
        }
        let ok = due[depth].iter().all(|e| coords[e.lhs[0]] + coords[e.lhs[1]] == coords[e.rhs[0]] + coords[e.rhs[1]]);
        if !ok {
            continue;
        }
        if depth + 1 == n {
            out.push(NormalVector::new(coords.clone()));
        } else {
            depth += 1;
            next[depth] = 0;
        }
    }
    Ok(out)
}
