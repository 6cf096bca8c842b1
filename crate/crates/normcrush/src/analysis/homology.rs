use super::snf::{smith_normal_form, Matrix};
use crate::tri_core::{compute_skeleton, edge_index, Triangulation, EDGE_VERTICES};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

/// A finitely generated abelian group `Z^betti ⊕ Z/d1 ⊕ Z/d2 ⊕ …`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct HomologyGroup {
    pub betti: usize,
    /// Invariant factors, each at least 2 and dividing the next.
    pub torsion: Vec<u64>,
}

impl HomologyGroup {
    pub fn trivial() -> Self {
        HomologyGroup { betti: 0, torsion: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

impl std::fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".into()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// First homology from the dual cell structure: one vertex per tetrahedron,
/// one edge per internal face, one 2-cell per internal edge. Ideal and
/// boundary vertices are effectively truncated.
pub fn homology_h1(t: &Triangulation) -> Result<HomologyGroup> {
    let sk = compute_skeleton(t)?;
    if let Some(e) = sk.edges.iter().position(|e| !e.valid) {
        return Err(Error::InvalidInput(format!("edge class {e} is invalid")));
    }
    // Dual edges: internal face classes, oriented away from their lowest member.
    let mut dual_edge = vec![[usize::MAX; 4]; t.tet_count()];
    let mut dual_from = Vec::new();
    for class in &sk.faces {
        if class.boundary {
            continue;
        }
        let id = dual_from.len();
        let (tet, f) = class.members[0];
        dual_from.push((tet, f));
        for &(m, g) in &class.members {
            dual_edge[m][g] = id;
        }
    }
    let n1 = dual_from.len();
    let n0 = t.tet_count();
    // ∂1: rows are dual vertices, columns dual edges.
    let mut d1: Matrix = vec![vec![BigInt::zero(); n1]; n0];
    for (id, &(tet, f)) in dual_from.iter().enumerate() {
        let g = t.gluing(tet, f).expect("internal face");
        d1[g.tet][id] += BigInt::one();
        d1[tet][id] -= BigInt::one();
    }
    // ∂2: rows are dual edges, columns internal edge classes.
    let internal: Vec<usize> = (0..sk.edges.len()).filter(|&e| !sk.edges[e].boundary).collect();
    let mut d2: Matrix = vec![vec![BigInt::zero(); internal.len()]; n1];
    for (col, &e) in internal.iter().enumerate() {
        for (tet_face, sign) in edge_cycle(t, sk.edges[e].members[0]) {
            let id = dual_edge[tet_face.0][tet_face.1];
            let s = if dual_from[id] == tet_face { sign } else { -sign };
            d2[id][col] += BigInt::from(s);
        }
    }
    let r1 = smith_normal_form(&d1, n0, n1).rank();
    let s2 = smith_normal_form(&d2, n1, internal.len());
    let torsion = s2
        .diagonal
        .iter()
        .filter(|d| **d > BigInt::one())
        .map(|d| d.to_u64().ok_or_else(|| Error::InvalidInput("torsion coefficient exceeds 64 bits".into())))
        .collect::<Result<Vec<_>>>()?;
    Ok(HomologyGroup { betti: n1 - r1 - s2.rank(), torsion })
}

/// Faces crossed walking once around an internal edge, starting from germ
/// `(tet, e)`; each crossing is `((tet, face), +1)` in walking direction.
fn edge_cycle(t: &Triangulation, start: (usize, usize)) -> Vec<((usize, usize), i64)> {
    let (tet0, e0) = start;
    let (a0, b0) = EDGE_VERTICES[e0];
    let others = |a: usize, b: usize| -> [usize; 2] {
        let v: Vec<usize> = (0..4).filter(|&x| x != a && x != b).collect();
        [v[0], v[1]]
    };
    let exit0 = others(a0, b0)[0];
    let (mut tet, mut a, mut b, mut exit) = (tet0, a0, b0, exit0);
    let mut out = Vec::new();
    loop {
        out.push(((tet, exit), 1));
        let g = t.gluing(tet, exit).expect("internal edge has no boundary faces");
        let p = g.perm;
        let (na, nb, entry) = (p.apply(a), p.apply(b), p.apply(exit));
        let o = others(na, nb);
        let nexit = if o[0] == entry { o[1] } else { o[0] };
        tet = g.tet;
        a = na;
        b = nb;
        exit = nexit;
        if tet == tet0 && edge_index(a, b) == e0 && exit == exit0 && a == a0 {
            break;
        }
        assert!(out.len() <= 24 * t.tet_count(), "edge walk did not close");
    }
    out
}
