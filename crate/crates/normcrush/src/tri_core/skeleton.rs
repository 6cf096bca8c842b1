use super::triangulation::Triangulation;
use crate::uf::{ParityUnionFind, UnionFind};
use crate::Result;
use serde::Serialize;

/// Tetrahedron edge `i` joins `EDGE_VERTICES[i].0` to `EDGE_VERTICES[i].1`.
pub const EDGE_VERTICES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

pub(crate) fn edge_index(a: usize, b: usize) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    match (a, b) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        (2, 3) => 5,
        _ => panic!("no edge between {a} and {b}"),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexClass {
    /// (tetrahedron, corner) pairs, sorted.
    pub members: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeClass {
    /// (tetrahedron, edge index) pairs, sorted.
    pub members: Vec<(usize, usize)>,
    /// False iff some sequence of gluings maps a germ to itself reversed.
    pub valid: bool,
    /// True iff some germ lies in a boundary face.
    pub boundary: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceClass {
    pub members: Vec<(usize, usize)>,
    pub boundary: bool,
}

/// Vertex, edge and face classes of a triangulation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Skeleton {
    pub vertices: Vec<VertexClass>,
    pub edges: Vec<EdgeClass>,
    pub faces: Vec<FaceClass>,
    /// Class of corner `v` of tetrahedron `t` is `vertex_of[t][v]`.
    pub vertex_of: Vec<[usize; 4]>,
    pub edge_of: Vec<[usize; 6]>,
    pub face_of: Vec<[usize; 4]>,
}

impl Skeleton {
    pub fn internal_face_count(&self) -> usize {
        self.faces.iter().filter(|f| !f.boundary).count()
    }

    pub fn boundary_face_count(&self) -> usize {
        self.faces.iter().filter(|f| f.boundary).count()
    }
}

/// Equivalence classes of corners, edge germs and faces under the gluings.
pub fn compute_skeleton(t: &Triangulation) -> Result<Skeleton> {
    t.validate()?;
    let n = t.tet_count();
    let mut vuf = UnionFind::new(4 * n);
    let mut euf = ParityUnionFind::new(6 * n);
    let mut fuf = UnionFind::new(4 * n);
    let mut boundary_edge = vec![false; 6 * n];
    for tet in 0..n {
        for f in 0..4 {
            match t.gluing(tet, f) {
                Some(g) => {
                    fuf.union(4 * tet + f, 4 * g.tet + g.perm.apply(f));
                    for v in (0..4).filter(|&v| v != f) {
                        vuf.union(4 * tet + v, 4 * g.tet + g.perm.apply(v));
                    }
                    for (e, &(a, b)) in EDGE_VERTICES.iter().enumerate() {
                        if a == f || b == f {
                            continue;
                        }
                        let (pa, pb) = (g.perm.apply(a), g.perm.apply(b));
                        euf.union(6 * tet + e, 6 * g.tet + edge_index(pa, pb), pa > pb);
                    }
                }
                None => {
                    for (e, &(a, b)) in EDGE_VERTICES.iter().enumerate() {
                        if a != f && b != f {
                            boundary_edge[6 * tet + e] = true;
                        }
                    }
                }
            }
        }
    }
    let (vid, vcount) = vuf.classes();
    let (eid, ecount) = euf.classes();
    let (fid, fcount) = fuf.classes();

    let mut vertices = vec![VertexClass { members: Vec::new() }; vcount];
    let mut edges = vec![EdgeClass { members: Vec::new(), valid: true, boundary: false }; ecount];
    let mut faces = vec![FaceClass { members: Vec::new(), boundary: false }; fcount];
    let mut vertex_of = vec![[0; 4]; n];
    let mut edge_of = vec![[0; 6]; n];
    let mut face_of = vec![[0; 4]; n];
    for tet in 0..n {
        for v in 0..4 {
            let c = vid[4 * tet + v];
            vertex_of[tet][v] = c;
            vertices[c].members.push((tet, v));
        }
        for e in 0..6 {
            let c = eid[6 * tet + e];
            edge_of[tet][e] = c;
            edges[c].members.push((tet, e));
            if euf.has_conflict(6 * tet + e) {
                edges[c].valid = false;
            }
            if boundary_edge[6 * tet + e] {
                edges[c].boundary = true;
            }
        }
        for f in 0..4 {
            let c = fid[4 * tet + f];
            face_of[tet][f] = c;
            faces[c].members.push((tet, f));
            if t.gluing(tet, f).is_none() {
                faces[c].boundary = true;
            }
        }
    }
    Ok(Skeleton { vertices, edges, faces, vertex_of, edge_of, face_of })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexKind {
    Internal,
    Boundary,
    Ideal,
    Invalid,
}

impl VertexKind {
    /// Classification from the link surface's invariants.
    pub fn from_link(chi: i64, orientable: bool, boundary_circles: usize, connected: bool) -> VertexKind {
        if !connected {
            return VertexKind::Invalid;
        }
        if boundary_circles == 0 {
            if chi == 2 && orientable {
                VertexKind::Internal
            } else {
                VertexKind::Ideal
            }
        } else if chi == 1 && orientable && boundary_circles == 1 {
            VertexKind::Boundary
        } else {
            VertexKind::Invalid
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            VertexKind::Internal => "internal",
            VertexKind::Boundary => "boundary",
            VertexKind::Ideal => "ideal",
            VertexKind::Invalid => "invalid",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexLink {
    pub chi: i64,
    pub orientable: bool,
    pub boundary_circles: usize,
    pub kind: VertexKind,
    /// Number of corner triangles in the link.
    pub degree: usize,
}

/// Per vertex class, the link invariants and the four-way classification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexReport {
    pub vertices: Vec<VertexLink>,
}

/// Builds each vertex link from corner triangles glued along the induced
/// side identifications and reports χ, orientability and boundary circles.
pub fn classify_vertices(t: &Triangulation) -> Result<VertexReport> {
    let sk = compute_skeleton(t)?;
    let n = t.tet_count();
    // Link vertex (t, v, w) sits on tetrahedron edge vw near v.
    let lv = |tet: usize, v: usize, w: usize| 16 * tet + 4 * v + w;
    let mut point_uf = UnionFind::new(16 * n);
    let mut corner_uf = ParityUnionFind::new(4 * n);
    let mut orientable = vec![true; sk.vertices.len()];
    let mut glued_sides = vec![0usize; sk.vertices.len()];
    let mut free_sides: Vec<Vec<(usize, usize)>> = vec![Vec::new(); sk.vertices.len()];

    // Corner triangle (t, v) is oriented by the increasing cyclic order of
    // its three neighbours; this tells which way it runs along a side.
    let runs_forward = |v: usize, a: usize, b: usize| -> bool {
        let mut ws: Vec<usize> = (0..4).filter(|&w| w != v).collect();
        ws.sort();
        let pos = |x: usize| ws.iter().position(|&w| w == x).unwrap();
        (pos(a) + 1) % 3 == pos(b)
    };

    for tet in 0..n {
        for v in 0..4 {
            let vc = sk.vertex_of[tet][v];
            for f in (0..4).filter(|&f| f != v) {
                let others: Vec<usize> = (0..4).filter(|&x| x != v && x != f).collect();
                let (a, b) = (others[0], others[1]);
                match t.gluing(tet, f) {
                    Some(g) => {
                        glued_sides[vc] += 1;
                        let (pv, pa, pb) = (g.perm.apply(v), g.perm.apply(a), g.perm.apply(b));
                        point_uf.union(lv(tet, v, a), lv(g.tet, pv, pa));
                        point_uf.union(lv(tet, v, b), lv(g.tet, pv, pb));
                        let d1 = runs_forward(v, a, b);
                        let d2 = runs_forward(pv, pa, pb);
                        if !corner_uf.union(4 * tet + v, 4 * g.tet + pv, d1 == d2) {
                            orientable[vc] = false;
                        }
                    }
                    None => free_sides[vc].push((lv(tet, v, a), lv(tet, v, b))),
                }
            }
        }
    }

    let mut vertices = Vec::with_capacity(sk.vertices.len());
    for (vc, class) in sk.vertices.iter().enumerate() {
        let mut points = Vec::new();
        for &(tet, v) in &class.members {
            for w in (0..4).filter(|&w| w != v) {
                points.push(point_uf.find(lv(tet, v, w)));
            }
        }
        points.sort();
        points.dedup();
        let faces = class.members.len() as i64;
        let edges = (glued_sides[vc] / 2 + free_sides[vc].len()) as i64;
        let chi = points.len() as i64 - edges + faces;
        let mut circles = UnionFind::new(points.len());
        let mut touched = vec![false; points.len()];
        for &(a, b) in &free_sides[vc] {
            let ia = points.binary_search(&point_uf.find(a)).unwrap();
            let ib = points.binary_search(&point_uf.find(b)).unwrap();
            touched[ia] = true;
            touched[ib] = true;
            circles.union(ia, ib);
        }
        let mut roots: Vec<usize> = (0..points.len()).filter(|&i| touched[i]).map(|i| circles.find(i)).collect();
        roots.sort();
        roots.dedup();
        let boundary_circles = roots.len();
        let orient = orientable[vc];
        vertices.push(VertexLink {
            chi,
            orientable: orient,
            boundary_circles,
            kind: VertexKind::from_link(chi, orient, boundary_circles, true),
            degree: class.members.len(),
        });
    }
    Ok(VertexReport { vertices })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    Internal,
    Boundary,
    Invalid,
}

/// Per edge class: invalid takes precedence over boundary; both facts are in
/// the skeleton's `EdgeClass`.
pub fn classify_edges(t: &Triangulation) -> Result<Vec<EdgeKind>> {
    let sk = compute_skeleton(t)?;
    Ok(sk
        .edges
        .iter()
        .map(|e| {
            if !e.valid {
                EdgeKind::Invalid
            } else if e.boundary {
                EdgeKind::Boundary
            } else {
                EdgeKind::Internal
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tri_core::Perm4;

    #[test]
    fn lone_tetrahedron() {
        let t = Triangulation::new(1);
        let sk = compute_skeleton(&t).unwrap();
        assert_eq!((sk.vertices.len(), sk.edges.len(), sk.faces.len()), (4, 6, 4));
        let rep = classify_vertices(&t).unwrap();
        assert!(rep.vertices.iter().all(|v| v.kind == VertexKind::Boundary));
        assert!(classify_edges(&t).unwrap().iter().all(|&k| k == EdgeKind::Boundary));
    }

    #[test]
    fn one_face_pair() {
        let mut t = Triangulation::new(2);
        t.glue(0, 3, 1, Perm4::new([1, 0, 2, 3]).unwrap()).unwrap();
        let sk = compute_skeleton(&t).unwrap();
        assert_eq!((sk.vertices.len(), sk.edges.len(), sk.faces.len()), (5, 9, 7));
        assert_eq!(sk.internal_face_count(), 1);
    }
}
