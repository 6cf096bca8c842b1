use crate::tri_core::Triangulation;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Quad type `k` separates `QUAD_SIDES[k][0]` from `QUAD_SIDES[k][1]`; the
/// first side always contains vertex 0.
pub const QUAD_SIDES: [[[usize; 2]; 2]; 3] = [[[0, 1], [2, 3]], [[0, 2], [1, 3]], [[0, 3], [1, 2]]];

pub const QUAD_NAMES: [&str; 3] = ["q01|23", "q02|13", "q03|12"];

/// Quad type that puts `a` and `b` on the same side.
pub fn quad_pairing(a: usize, b: usize) -> usize {
    debug_assert_ne!(a, b);
    let other = if a == 0 { b } else if b == 0 { a } else { 6 - a - b };
    other - 1
}

/// Whether a quad of type `k` crosses tetrahedron edge `ab`.
pub fn quad_crosses(k: usize, a: usize, b: usize) -> bool {
    quad_pairing(a, b) != k
}

/// Whether `v` is on the vertex-0 side of quad type `k`.
pub fn quad_first_side(k: usize, v: usize) -> bool {
    QUAD_SIDES[k][0].contains(&v)
}

/// Normal coordinates, per tetrahedron `(t0, t1, t2, t3, q01|23, q02|13, q03|12)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalVector {
    pub coords: Vec<u64>,
}

impl NormalVector {
    pub fn new(coords: Vec<u64>) -> Self {
        NormalVector { coords }
    }

    pub fn zero(tets: usize) -> Self {
        NormalVector { coords: vec![0; 7 * tets] }
    }

    /// One triangle at every corner: the union of all vertex links.
    pub fn vertex_links(tets: usize) -> Self {
        let mut coords = vec![0; 7 * tets];
        for t in 0..tets {
            for v in 0..4 {
                coords[7 * t + v] = 1;
            }
        }
        NormalVector { coords }
    }

    pub fn tets(&self) -> usize {
        self.coords.len() / 7
    }

    pub fn tri(&self, tet: usize, v: usize) -> u64 {
        self.coords[7 * tet + v]
    }

    pub fn quad(&self, tet: usize, k: usize) -> u64 {
        self.coords[7 * tet + 4 + k]
    }

    /// The nonzero quad type of a tetrahedron and its count, if any.
    pub fn quad_of(&self, tet: usize) -> Option<(usize, u64)> {
        (0..3).find(|&k| self.quad(tet, k) > 0).map(|k| (k, self.quad(tet, k)))
    }

    /// Number of normal arcs in face `x` of `tet` cutting off corner `v`.
    pub fn arcs(&self, tet: usize, x: usize, v: usize) -> u64 {
        self.tri(tet, v) + self.quad(tet, quad_pairing(v, x))
    }

    pub fn is_trivial(&self) -> bool {
        (0..self.tets()).all(|t| self.quad_of(t).is_none())
    }

    pub fn disc_count(&self) -> u64 {
        self.coords.iter().sum()
    }

    pub fn add(&self, other: &NormalVector) -> NormalVector {
        NormalVector { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() }
    }

    pub fn check_length(&self, t: &Triangulation) -> Result<()> {
        if self.coords.len() != 7 * t.tet_count() {
            return Err(Error::LengthMismatch { expected: 7 * t.tet_count(), found: self.coords.len() });
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<NormalVector> {
        let file: NsFile = serde_json::from_str(text).map_err(|e| Error::Format(format!("ns-v1: {e}")))?;
        if file.format != "ns-v1" {
            return Err(Error::Format(format!("expected format \"ns-v1\", found {:?}", file.format)));
        }
        if file.coords.len() % 7 != 0 {
            return Err(Error::Format(format!("ns-v1: {} coordinates is not a multiple of 7", file.coords.len())));
        }
        Ok(NormalVector { coords: file.coords })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&NsFile { format: "ns-v1".into(), coords: self.coords.clone() }).expect("ns-v1")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NsFile {
    format: String,
    coords: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    QuadConstraint { tet: usize, quads: [u64; 3] },
    Matching { tet: usize, face: usize, corner: usize, count: u64, other_tet: usize, other_face: usize, other_count: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    pub violation: Option<Violation>,
}

/// Checks the quad constraint in every tetrahedron, then arc matching across
/// every face gluing, reporting the first failure.
pub fn check_admissible(t: &Triangulation, v: &NormalVector) -> Result<AdmissibilityReport> {
    v.check_length(t)?;
    for tet in 0..t.tet_count() {
        let quads = [v.quad(tet, 0), v.quad(tet, 1), v.quad(tet, 2)];
        if quads.iter().filter(|&&q| q > 0).count() > 1 {
            return Ok(AdmissibilityReport { admissible: false, violation: Some(Violation::QuadConstraint { tet, quads }) });
        }
    }
    for tet in 0..t.tet_count() {
        for x in 0..4 {
            let Some(g) = t.gluing(tet, x) else { continue };
            for corner in (0..4).filter(|&c| c != x) {
                let (a, b) = (v.arcs(tet, x, corner), v.arcs(g.tet, g.perm.apply(x), g.perm.apply(corner)));
                if a != b {
                    let violation = Violation::Matching {
                        tet,
                        face: x,
                        corner,
                        count: a,
                        other_tet: g.tet,
                        other_face: g.perm.apply(x),
                        other_count: b,
                    };
                    return Ok(AdmissibilityReport { admissible: false, violation: Some(violation) });
                }
            }
        }
    }
    Ok(AdmissibilityReport { admissible: true, violation: None })
}

pub fn is_admissible(t: &Triangulation, v: &NormalVector) -> bool {
    check_admissible(t, v).map(|r| r.admissible).unwrap_or(false)
}
