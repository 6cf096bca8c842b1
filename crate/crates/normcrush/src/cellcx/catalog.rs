//! The fixed catalog of 3-cell shapes and recognition of cells against it.

use super::cell::{Cell, FaceMark, Side};
use crate::tri_core::EDGE_VERTICES;
use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::OnceLock;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ShapeId {
    Tet,
    ParTri,
    ParQuad,
    Corner,
    Wedge0,
    Wedge1,
    Wedge2,
    Central1,
    Central2,
    Central3,
    Central4,
    Football3,
    Football4,
    TriPurse,
    TriPillow,
    BigonPillow,
    BigonPyramid,
}

pub const ALL_SHAPES: [ShapeId; 17] = [
    ShapeId::Tet,
    ShapeId::ParTri,
    ShapeId::ParQuad,
    ShapeId::Corner,
    ShapeId::Wedge0,
    ShapeId::Wedge1,
    ShapeId::Wedge2,
    ShapeId::Central1,
    ShapeId::Central2,
    ShapeId::Central3,
    ShapeId::Central4,
    ShapeId::Football3,
    ShapeId::Football4,
    ShapeId::TriPurse,
    ShapeId::TriPillow,
    ShapeId::BigonPillow,
    ShapeId::BigonPyramid,
];

/// Cells that may appear while flattening a non-destructively crushed complex.
pub const DESTRUCTIBLE_SHAPES: [ShapeId; 7] = [
    ShapeId::Football3,
    ShapeId::Football4,
    ShapeId::TriPurse,
    ShapeId::Tet,
    ShapeId::TriPillow,
    ShapeId::BigonPillow,
    ShapeId::BigonPyramid,
];

impl ShapeId {
    pub fn name(&self) -> &'static str {
        match self {
            ShapeId::Tet => "TET",
            ShapeId::ParTri => "PAR_TRI",
            ShapeId::ParQuad => "PAR_QUAD",
            ShapeId::Corner => "CORNER",
            ShapeId::Wedge0 => "WEDGE_0",
            ShapeId::Wedge1 => "WEDGE_1",
            ShapeId::Wedge2 => "WEDGE_2",
            ShapeId::Central1 => "CENTRAL_1",
            ShapeId::Central2 => "CENTRAL_2",
            ShapeId::Central3 => "CENTRAL_3",
            ShapeId::Central4 => "CENTRAL_4",
            ShapeId::Football3 => "FOOTBALL3",
            ShapeId::Football4 => "FOOTBALL4",
            ShapeId::TriPurse => "TRI_PURSE",
            ShapeId::TriPillow => "TRI_PILLOW",
            ShapeId::BigonPillow => "BIGON_PILLOW",
            ShapeId::BigonPyramid => "BIGON_PYRAMID",
        }
    }

    /// Parses a shape name; `CENTRAL_0` is the untruncated tetrahedron.
    pub fn from_name(s: &str) -> Option<ShapeId> {
        if s == "CENTRAL_0" {
            return Some(ShapeId::Tet);
        }
        ALL_SHAPES.iter().copied().find(|sh| sh.name() == s)
    }

    pub fn is_destructible(&self) -> bool {
        DESTRUCTIBLE_SHAPES.contains(self)
    }

    pub fn wedge(bridges: usize) -> ShapeId {
        [ShapeId::Wedge0, ShapeId::Wedge1, ShapeId::Wedge2][bridges]
    }

    pub fn central(truncated: usize) -> ShapeId {
        [ShapeId::Tet, ShapeId::Central1, ShapeId::Central2, ShapeId::Central3, ShapeId::Central4][truncated]
    }

    /// The frozen boundary combinatorics of this shape.
    pub fn canonical(&self) -> &'static Cell {
        static TABLE: OnceLock<HashMap<ShapeId, Cell>> = OnceLock::new();
        let table = TABLE.get_or_init(|| ALL_SHAPES.iter().map(|&s| (s, build(s))).collect());
        &table[self]
    }

    /// Corners of the link polygon at canonical vertex `v`, as (face, position).
    pub fn corner_polygon(&self, v: usize) -> Vec<(usize, usize)> {
        let c = self.canonical();
        let mut out = Vec::new();
        for f in 0..c.faces.len() {
            for j in 0..c.arity(f) {
                if c.corner_vertex(f, j) == v {
                    out.push((f, j));
                }
            }
        }
        out
    }
}

impl std::fmt::Display for ShapeId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Outward vertex cycle of tetrahedron face `i` (opposite vertex `i`).
pub const TET_FACE_CYCLES: [[usize; 3]; 4] = [[1, 2, 3], [0, 3, 2], [0, 1, 3], [0, 2, 1]];

fn build(shape: ShapeId) -> Cell {
    use FaceMark::*;
    let mut cell = match shape {
        ShapeId::Tet => {
            let ends: Vec<(usize, usize)> = EDGE_VERTICES.to_vec();
            let edge = |a: usize, b: usize| ends.iter().position(|&(x, y)| (x, y) == (a.min(b), a.max(b))).unwrap();
            let faces: Vec<(Vec<usize>, Vec<usize>)> = TET_FACE_CYCLES
                .iter()
                .map(|c| (c.to_vec(), (0..3).map(|j| edge(c[j], c[(j + 1) % 3])).collect()))
                .collect();
            let refs: Vec<(&[usize], &[usize])> = faces.iter().map(|(v, e)| (v.as_slice(), e.as_slice())).collect();
            Cell::from_cycles(4, &ends, &refs, &[Plain; 4])
        }
        ShapeId::Corner => tet_region(&[0], &[]),
        ShapeId::Wedge0 => tet_region(&[0, 1], &[]),
        ShapeId::Wedge1 => tet_region(&[0, 1], &[0]),
        ShapeId::Wedge2 => tet_region(&[0, 1], &[0, 1]),
        ShapeId::Central1 => tet_region(&[0, 1, 2, 3], &[0]),
        ShapeId::Central2 => tet_region(&[0, 1, 2, 3], &[0, 1]),
        ShapeId::Central3 => tet_region(&[0, 1, 2, 3], &[0, 1, 2]),
        ShapeId::Central4 => tet_region(&[0, 1, 2, 3], &[0, 1, 2, 3]),
        ShapeId::ParTri => named_polyhedron(&[
            (&["a0", "a1", "a2"], Surface),
            (&["b0", "b1", "b2"], Surface),
            (&["a0", "a1", "b1", "b0"], Bridge),
            (&["a1", "a2", "b2", "b1"], Bridge),
            (&["a2", "a0", "b0", "b2"], Bridge),
        ]),
        ShapeId::ParQuad => named_polyhedron(&[
            (&["a0", "a1", "a2", "a3"], Surface),
            (&["b0", "b1", "b2", "b3"], Surface),
            (&["a0", "a1", "b1", "b0"], Bridge),
            (&["a1", "a2", "b2", "b1"], Bridge),
            (&["a2", "a3", "b3", "b2"], Bridge),
            (&["a3", "a0", "b0", "b3"], Bridge),
        ]),
        ShapeId::Football3 => football(3),
        ShapeId::Football4 => football(4),
        ShapeId::TriPillow => Cell::from_cycles(
            3,
            &[(0, 1), (1, 2), (2, 0)],
            &[(&[0, 1, 2], &[0, 1, 2]), (&[0, 2, 1], &[2, 1, 0])],
            &[Plain; 2],
        ),
        ShapeId::BigonPillow => football(2),
        // Vertices a=0, b=1, p=2; edges ab, ap (two), bp (two).
        ShapeId::TriPurse => Cell::from_cycles(
            3,
            &[(0, 1), (0, 2), (0, 2), (1, 2), (1, 2)],
            &[
                (&[0, 1, 2], &[0, 3, 1]),
                (&[0, 2, 1], &[2, 4, 0]),
                (&[1, 2], &[4, 3]),
                (&[0, 2], &[1, 2]),
            ],
            &[Plain; 4],
        ),
        ShapeId::BigonPyramid => Cell::from_cycles(
            3,
            &[(0, 1), (0, 2), (1, 2), (1, 2)],
            &[(&[0, 1, 2], &[0, 2, 1]), (&[0, 2, 1], &[1, 3, 0]), (&[1, 2], &[3, 2])],
            &[Plain; 3],
        ),
    };
    cell.shape = Some(shape);
    cell.check().unwrap_or_else(|e| panic!("catalog shape {shape:?}: {e}"));
    cell
}

/// `k` edges from vertex 0 to vertex 1 with `k` bigons between consecutive edges.
fn football(k: usize) -> Cell {
    let edges: Vec<[usize; 2]> = vec![[0, 1]; k];
    let faces = (0..k)
        .map(|i| vec![Side { edge: i, forward: true }, Side { edge: (i + 1) % k, forward: false }])
        .collect();
    Cell { shape: None, benign: false, num_vertices: 2, edges, faces, marks: vec![FaceMark::Plain; k] }
}

/// The part of a tetrahedron on the `keep` side of a normal disc, with the
/// corners in `truncated` cut off by triangles. `keep` of size 1 gives the
/// corner region, size 2 a wedge, size 4 a central region.
fn tet_region(keep: &[usize], truncated: &[usize]) -> Cell {
    let kept = |v: usize| keep.contains(&v);
    let name_v = |v: usize| format!("v{v}");
    let name_t = |v: usize, w: usize| format!("t{v}{w}");
    let name_q = |a: usize, b: usize| format!("q{}{}", a.min(b), a.max(b));
    let mut faces: Vec<(Vec<String>, FaceMark)> = Vec::new();
    for cyc in TET_FACE_CYCLES.iter() {
        let mut poly = Vec::new();
        for k in 0..3 {
            let (prev, u, w) = (cyc[(k + 2) % 3], cyc[k], cyc[(k + 1) % 3]);
            if kept(u) {
                if truncated.contains(&u) {
                    poly.push(name_t(u, prev));
                    poly.push(name_t(u, w));
                } else {
                    poly.push(name_v(u));
                }
            }
            if kept(u) != kept(w) {
                poly.push(name_q(u, w));
            }
        }
        if poly.len() >= 3 {
            let bridge = poly.len() == 4 && poly.iter().all(|p| !p.starts_with('v'));
            faces.push((poly, if bridge { FaceMark::Bridge } else { FaceMark::Plain }));
        }
    }
    for &v in truncated {
        let tri: Vec<String> = (0..4).filter(|&w| w != v).map(|w| name_t(v, w)).collect();
        faces.push((tri, FaceMark::Surface));
    }
    let out: Vec<usize> = (0..4).filter(|&v| !kept(v)).collect();
    match (keep.len(), out.len()) {
        (1, 3) => faces.push(((0..3).map(|i| name_q(keep[0], out[i])).collect(), FaceMark::Surface)),
        (2, 2) => {
            let (a, b, c, d) = (keep[0], keep[1], out[0], out[1]);
            faces.push((vec![name_q(a, c), name_q(a, d), name_q(b, d), name_q(b, c)], FaceMark::Surface));
        }
        _ => {}
    }
    let refs: Vec<(Vec<&str>, FaceMark)> =
        faces.iter().map(|(p, m)| (p.iter().map(|s| s.as_str()).collect(), *m)).collect();
    let refs2: Vec<(&[&str], FaceMark)> = refs.iter().map(|(p, m)| (p.as_slice(), *m)).collect();
    named_polyhedron(&refs2)
}

fn named_polyhedron(faces: &[(&[&str], FaceMark)]) -> Cell {
    polyhedron_from_names(faces).0
}

/// A polyhedron with simple edges from faces given as cycles of vertex names.
/// Face orientations are made consistent starting from the first face; the
/// flags report which faces had to be reversed.
pub(crate) fn polyhedron_from_names(faces: &[(&[&str], FaceMark)]) -> (Cell, Vec<bool>) {
    let mut names: Vec<&str> = Vec::new();
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    for (f, _) in faces {
        let mut cyc = Vec::new();
        for name in f.iter() {
            let idx = match names.iter().position(|n| n == name) {
                Some(i) => i,
                None => {
                    names.push(name);
                    names.len() - 1
                }
            };
            cyc.push(idx);
        }
        cycles.push(cyc);
    }
    let key = |a: usize, b: usize| (a.min(b), a.max(b));
    let mut edge_faces: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (fi, cyc) in cycles.iter().enumerate() {
        for j in 0..cyc.len() {
            edge_faces.entry(key(cyc[j], cyc[(j + 1) % cyc.len()])).or_default().push(fi);
        }
    }
    let runs = |cyc: &[usize], a: usize, b: usize| (0..cyc.len()).any(|j| cyc[j] == a && cyc[(j + 1) % cyc.len()] == b);
    let mut done = vec![false; cycles.len()];
    let mut reversed = vec![false; cycles.len()];
    done[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(fi) = queue.pop_front() {
        let cyc = cycles[fi].clone();
        for j in 0..cyc.len() {
            let (a, b) = (cyc[j], cyc[(j + 1) % cyc.len()]);
            for &g in &edge_faces[&key(a, b)] {
                if g == fi || done[g] {
                    continue;
                }
                if runs(&cycles[g], a, b) {
                    cycles[g].reverse();
                    reversed[g] = true;
                }
                done[g] = true;
                queue.push_back(g);
            }
        }
    }
    let ends: Vec<(usize, usize)> = edge_faces.keys().copied().collect();
    let edge_ids: Vec<Vec<usize>> = cycles
        .iter()
        .map(|cyc| {
            (0..cyc.len())
                .map(|j| ends.binary_search(&key(cyc[j], cyc[(j + 1) % cyc.len()])).unwrap())
                .collect()
        })
        .collect();
    let refs: Vec<(&[usize], &[usize])> =
        cycles.iter().zip(edge_ids.iter()).map(|(c, e)| (c.as_slice(), e.as_slice())).collect();
    let marks: Vec<FaceMark> = faces.iter().map(|(_, m)| *m).collect();
    (Cell::from_cycles(names.len(), &ends, &refs, &marks), reversed)
}

/// An orientation-preserving isomorphism from a shape's canonical boundary
/// onto a cell's boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellIso {
    /// Canonical face `i` is target face `faces[i].0`, with canonical
    /// position `j` at target position `faces[i].1 + j`.
    pub faces: Vec<(usize, usize)>,
    /// Canonical vertex -> target vertex.
    pub vertices: Vec<usize>,
    /// Canonical edge -> (target edge, same direction).
    pub edges: Vec<(usize, bool)>,
}

type Signature = (usize, usize, usize, Vec<(usize, FaceMark)>);

fn signature(c: &Cell) -> Signature {
    let mut faces: Vec<(usize, FaceMark)> = (0..c.faces.len()).map(|f| (c.arity(f), c.marks[f])).collect();
    faces.sort();
    (c.num_vertices, c.edges.len(), c.faces.len(), faces)
}

struct Darts {
    /// Flat dart index of (face, position).
    base: Vec<usize>,
    face: Vec<usize>,
    pos: Vec<usize>,
    opp: Vec<usize>,
}

fn darts(c: &Cell) -> Option<Darts> {
    let mut base = Vec::with_capacity(c.faces.len());
    let (mut face, mut pos) = (Vec::new(), Vec::new());
    let mut by_edge: Vec<Vec<usize>> = vec![Vec::new(); c.edges.len()];
    for f in 0..c.faces.len() {
        base.push(face.len());
        for j in 0..c.arity(f) {
            by_edge[c.faces[f][j].edge].push(face.len());
            face.push(f);
            pos.push(j);
        }
    }
    let mut opp = vec![usize::MAX; face.len()];
    for ds in &by_edge {
        if ds.len() != 2 {
            return None;
        }
        opp[ds[0]] = ds[1];
        opp[ds[1]] = ds[0];
    }
    Some(Darts { base, face, pos, opp })
}

/// Finds the catalog shape of a cell together with an isomorphism from the
/// canonical boundary, respecting face marks.
pub fn recognize(cell: &Cell) -> Option<(ShapeId, CellIso)> {
    cell.check().ok()?;
    let sig = signature(cell);
    for &shape in ALL_SHAPES.iter() {
        let canon = shape.canonical();
        if signature(canon) != sig {
            continue;
        }
        if let Some(iso) = find_iso(canon, cell) {
            return Some((shape, iso));
        }
    }
    None
}

pub fn find_iso(canon: &Cell, cell: &Cell) -> Option<CellIso> {
    let dc = darts(canon)?;
    let dt = darts(cell)?;
    let n = dc.face.len();
    if n != dt.face.len() {
        return None;
    }
    let next = |d: &Darts, c: &Cell, x: usize| d.base[d.face[x]] + (d.pos[x] + 1) % c.arity(d.face[x]);
    'outer: for t0 in 0..n {
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        let mut stack = vec![(0usize, t0)];
        while let Some((x, y)) = stack.pop() {
            if map[x] != usize::MAX {
                if map[x] != y {
                    continue 'outer;
                }
                continue;
            }
            if used[y]
                || canon.arity(dc.face[x]) != cell.arity(dt.face[y])
                || canon.marks[dc.face[x]] != cell.marks[dt.face[y]]
            {
                continue 'outer;
            }
            map[x] = y;
            used[y] = true;
            stack.push((next(&dc, canon, x), next(&dt, cell, y)));
            stack.push((dc.opp[x], dt.opp[y]));
        }
        if map.iter().any(|&y| y == usize::MAX) {
            continue;
        }
        let mut vertices = vec![usize::MAX; canon.num_vertices];
        let mut edges = vec![(usize::MAX, false); canon.edges.len()];
        for x in 0..n {
            let y = map[x];
            let (fx, px, fy, py) = (dc.face[x], dc.pos[x], dt.face[y], dt.pos[y]);
            let (vc, vt) = (canon.corner_vertex(fx, px), cell.corner_vertex(fy, py));
            if vertices[vc] == usize::MAX {
                vertices[vc] = vt;
            } else if vertices[vc] != vt {
                continue 'outer;
            }
            let (sc, st) = (canon.faces[fx][px], cell.faces[fy][py]);
            let e = (st.edge, sc.forward == st.forward);
            if edges[sc.edge].0 == usize::MAX {
                edges[sc.edge] = e;
            } else if edges[sc.edge] != e {
                continue 'outer;
            }
        }
        let mut vs = vertices.clone();
        vs.sort();
        vs.dedup();
        if vs.len() != cell.num_vertices {
            continue;
        }
        let faces = (0..canon.faces.len())
            .map(|i| {
                let y = map[dc.base[i]];
                (dt.face[y], dt.pos[y])
            })
            .collect();
        return Some(CellIso { faces, vertices, edges });
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_shape_bounds_a_sphere() {
        for s in ALL_SHAPES {
            let c = s.canonical();
            assert_eq!(c.boundary_euler(), 2, "{s}");
        }
    }

    #[test]
    fn shape_counts() {
        let counts = |s: ShapeId| {
            let c = s.canonical();
            (c.num_vertices, c.edges.len(), c.faces.len())
        };
        assert_eq!(counts(ShapeId::Tet), (4, 6, 4));
        assert_eq!(counts(ShapeId::ParTri), (6, 9, 5));
        assert_eq!(counts(ShapeId::ParQuad), (8, 12, 6));
        assert_eq!(counts(ShapeId::Corner), (4, 6, 4));
        assert_eq!(counts(ShapeId::Wedge0), (6, 9, 5));
        assert_eq!(counts(ShapeId::Wedge1), (8, 12, 6));
        assert_eq!(counts(ShapeId::Wedge2), (10, 15, 7));
        assert_eq!(counts(ShapeId::Central4), (12, 18, 8));
        assert_eq!(counts(ShapeId::Football3), (2, 3, 3));
        assert_eq!(counts(ShapeId::Football4), (2, 4, 4));
        assert_eq!(counts(ShapeId::TriPurse), (3, 5, 4));
        assert_eq!(counts(ShapeId::TriPillow), (3, 3, 2));
        assert_eq!(counts(ShapeId::BigonPillow), (2, 2, 2));
        assert_eq!(counts(ShapeId::BigonPyramid), (3, 4, 3));
    }

    #[test]
    fn bridge_faces() {
        let bridges = |s: ShapeId| s.canonical().marks.iter().filter(|&&m| m == FaceMark::Bridge).count();
        assert_eq!(bridges(ShapeId::ParTri), 3);
        assert_eq!(bridges(ShapeId::ParQuad), 4);
        assert_eq!(bridges(ShapeId::Wedge0), 0);
        assert_eq!(bridges(ShapeId::Wedge1), 1);
        assert_eq!(bridges(ShapeId::Wedge2), 2);
        assert_eq!(bridges(ShapeId::Central4), 0);
    }

    #[test]
    fn canonical_shapes_recognise_themselves_uniquely() {
        for s in ALL_SHAPES {
            let (found, iso) = recognize(s.canonical()).unwrap();
            assert_eq!(found, s);
            assert_eq!(iso.vertices.len(), s.canonical().num_vertices);
        }
    }

    #[test]
    fn link_polygons_cover_every_corner() {
        for s in ALL_SHAPES {
            let c = s.canonical();
            let total: usize = (0..c.num_vertices).map(|v| s.corner_polygon(v).len()).sum();
            let corners: usize = (0..c.faces.len()).map(|f| c.arity(f)).sum();
            assert_eq!(total, corners);
        }
    }
}
