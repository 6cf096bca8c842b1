use super::perm::Perm4;
use super::skeleton::compute_skeleton;
use super::triangulation::Triangulation;
use crate::{Error, Result};

pub const DEFAULT_ISO_CAP: usize = 10;

/// Tetrahedron `t` of the source maps to `tets[t]` with vertex map `perms[t]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isomorphism {
    pub tets: Vec<usize>,
    pub perms: Vec<Perm4>,
}

pub fn are_isomorphic(a: &Triangulation, b: &Triangulation) -> Result<bool> {
    are_isomorphic_with_cap(a, b, DEFAULT_ISO_CAP)
}

pub fn are_isomorphic_with_cap(a: &Triangulation, b: &Triangulation, cap: usize) -> Result<bool> {
    Ok(find_isomorphism(a, b, cap)?.is_some())
}

/// Exact backtracking search, seeded per connected component and pruned by
/// skeleton class counts. Refuses inputs larger than `cap` tetrahedra.
pub fn find_isomorphism(a: &Triangulation, b: &Triangulation, cap: usize) -> Result<Option<Isomorphism>> {
    let n = a.tet_count();
    if n.max(b.tet_count()) > cap {
        return Err(Error::SizeLimitExceeded { size: n.max(b.tet_count()), cap });
    }
    if n != b.tet_count() {
        return Ok(None);
    }
    let (sa, sb) = (compute_skeleton(a)?, compute_skeleton(b)?);
    let counts = |s: &super::Skeleton| {
        let invalid = s.edges.iter().filter(|e| !e.valid).count();
        (s.vertices.len(), s.edges.len(), s.faces.len(), s.boundary_face_count(), invalid)
    };
    if counts(&sa) != counts(&sb) {
        return Ok(None);
    }
    let mut state = State { tets: vec![None; n], perms: vec![Perm4::IDENTITY; n], used: vec![false; n] };
    if search(a, b, &mut state) {
        Ok(Some(Isomorphism {
            tets: state.tets.iter().map(|t| t.unwrap()).collect(),
            perms: state.perms,
        }))
    } else {
        Ok(None)
    }
}

#[derive(Clone)]
struct State {
    tets: Vec<Option<usize>>,
    perms: Vec<Perm4>,
    used: Vec<bool>,
}

fn search(a: &Triangulation, b: &Triangulation, state: &mut State) -> bool {
    let Some(seed) = state.tets.iter().position(|t| t.is_none()) else {
        return true;
    };
    for target in 0..b.tet_count() {
        if state.used[target] {
            continue;
        }
        for perm in Perm4::all() {
            let mut trial = state.clone();
            if propagate(a, b, &mut trial, seed, target, perm) && search(a, b, &mut trial) {
                *state = trial;
                return true;
            }
        }
    }
    false
}

/// Forces the images of everything reachable from `seed`; false on conflict.
fn propagate(a: &Triangulation, b: &Triangulation, st: &mut State, seed: usize, target: usize, perm: Perm4) -> bool {
    st.tets[seed] = Some(target);
    st.perms[seed] = perm;
    st.used[target] = true;
    let mut stack = vec![seed];
    while let Some(t) = stack.pop() {
        let (tb, pi) = (st.tets[t].unwrap(), st.perms[t]);
        for f in 0..4 {
            let fb = pi.apply(f);
            match (a.gluing(t, f), b.gluing(tb, fb)) {
                (None, None) => {}
                (Some(ga), Some(gb)) => {
                    // The neighbour's vertex map is forced by commuting with the gluings.
                    let sigma = gb.perm.compose(&pi).compose(&ga.perm.inverse());
                    match st.tets[ga.tet] {
                        Some(u) => {
                            if u != gb.tet || st.perms[ga.tet] != sigma {
                                return false;
                            }
                        }
                        None => {
                            if st.used[gb.tet] {
                                return false;
                            }
                            st.tets[ga.tet] = Some(gb.tet);
                            st.perms[ga.tet] = sigma;
                            st.used[gb.tet] = true;
                            stack.push(ga.tet);
                        }
                    }
                }
                _ => return false,
            }
        }
    }
    true
}
