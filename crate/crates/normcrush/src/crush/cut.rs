use crate::cellcx::{polyhedron_from_names, recognize, Cell, CellComplex, FaceMark, Ident, ShapeId, TET_FACE_CYCLES};
use crate::normal::{
    quad_crosses, quad_first_side, quad_pairing, surface_invariants, DiscComplex, DiscKind, NormalVector,
    SurfaceReport, QUAD_SIDES,
};
use crate::tri_core::{Perm4, Triangulation};
use crate::uf::UnionFind;
use crate::{Error, Result};
use serde::Serialize;
use std::collections::HashMap;

/// Where an induced cell sits inside its tetrahedron.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CellOrigin {
    /// Between vertex `v` and the first triangle there.
    Corner { tet: usize, v: usize },
    /// Between triangles `j` and `j + 1` at vertex `v`.
    ParTri { tet: usize, v: usize, j: usize },
    /// Between quads `j` and `j + 1`, counted from the vertex-0 side.
    ParQuad { tet: usize, j: usize },
    /// The piece beyond the outermost quad on side `side` (0 holds vertex 0).
    Wedge { tet: usize, side: usize },
    Central { tet: usize },
}

impl CellOrigin {
    pub fn tet(&self) -> usize {
        match *self {
            CellOrigin::Corner { tet, .. }
            | CellOrigin::ParTri { tet, .. }
            | CellOrigin::ParQuad { tet, .. }
            | CellOrigin::Wedge { tet, .. }
            | CellOrigin::Central { tet } => tet,
        }
    }

    pub fn is_parallel(&self) -> bool {
        matches!(self, CellOrigin::ParTri { .. } | CellOrigin::ParQuad { .. })
    }
}

/// One side of a surface component, as the surface faces lying on it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Remnant {
    pub surface_component: usize,
    /// `(cell, face)` surface faces.
    pub faces: Vec<(usize, usize)>,
}

/// The complex obtained by cutting a triangulation along a normal surface.
#[derive(Debug, Clone)]
pub struct CutComplex {
    pub complex: CellComplex,
    pub origins: Vec<CellOrigin>,
    pub remnants: Vec<Remnant>,
    pub surface: SurfaceReport,
    /// Connected component of each cell, numbered by lowest cell.
    pub component_of: Vec<usize>,
    pub component_count: usize,
    pub region_index: Option<usize>,
}

impl CutComplex {
    /// Components of the complement touched by each remnant.
    pub fn remnant_component(&self, r: usize) -> usize {
        let (c, _) = self.remnants[r].faces[0];
        self.component_of[c]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Region {
    Corner(usize),
    Strip(usize, usize),
    Central,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Point {
    Vertex(usize),
    /// Point `j` from `a` on edge `ab`, with `a < b`.
    Edge(usize, usize, usize),
}

impl Point {
    fn name(&self) -> String {
        match *self {
            Point::Vertex(v) => format!("v{v}"),
            Point::Edge(a, b, j) => format!("e{a}{b}.{j}"),
        }
    }
}

struct TetCut<'a> {
    v: &'a NormalVector,
    tet: usize,
    quad: Option<(usize, usize)>,
}

impl TetCut<'_> {
    fn tri(&self, u: usize) -> usize {
        self.v.tri(self.tet, u) as usize
    }

    fn edge_len(&self, a: usize, b: usize) -> usize {
        let q = match self.quad {
            Some((k, q)) if quad_crosses(k, a, b) => q,
            _ => 0,
        };
        self.tri(a) + self.tri(b) + q
    }

    /// Point `i` from `u` along edge `uw`.
    fn point(&self, u: usize, w: usize, i: usize) -> Point {
        if u < w {
            Point::Edge(u, w, i)
        } else {
            Point::Edge(w, u, self.edge_len(u, w) - 1 - i)
        }
    }

    fn arcs(&self, x: usize, c: usize) -> usize {
        self.v.arcs(self.tet, x, c) as usize
    }

    fn side_of(&self, u: usize) -> usize {
        let (k, _) = self.quad.expect("quad present");
        if quad_first_side(k, u) {
            0
        } else {
            1
        }
    }

    fn inner(&self, u: usize) -> CellOrigin {
        match self.quad {
            Some(_) => CellOrigin::Wedge { tet: self.tet, side: self.side_of(u) },
            None => CellOrigin::Central { tet: self.tet },
        }
    }

    /// Cell holding a region of face `x`.
    fn owner(&self, x: usize, r: Region) -> CellOrigin {
        let tet = self.tet;
        match r {
            Region::Corner(c) => {
                if self.tri(c) >= 1 {
                    CellOrigin::Corner { tet, v: c }
                } else {
                    self.inner(c)
                }
            }
            Region::Strip(c, i) => {
                let tc = self.tri(c);
                if i + 1 < tc {
                    CellOrigin::ParTri { tet, v: c, j: i }
                } else if i + 1 == tc {
                    self.inner(c)
                } else {
                    let (_, q) = self.quad.expect("quad arcs");
                    let from_c = i - tc;
                    let j = if self.side_of(c) == 0 { from_c } else { q - 2 - from_c };
                    CellOrigin::ParQuad { tet, j }
                }
            }
            Region::Central => match self.quad {
                None => CellOrigin::Central { tet },
                Some(_) => {
                    // The quad arc cuts off the corner paired with x; the
                    // central region lies on the other side.
                    let (k, _) = self.quad.unwrap();
                    let paired = (0..4).find(|&c| c != x && quad_pairing(c, x) == k).unwrap();
                    CellOrigin::Wedge { tet, side: 1 - self.side_of(paired) }
                }
            },
        }
    }

    fn regions(&self, x: usize) -> Vec<(Region, Vec<Point>)> {
        let cyc = TET_FACE_CYCLES[x];
        let mut out = Vec::new();
        let mut central = Vec::new();
        for k in 0..3 {
            let (prev, c, next) = (cyc[(k + 2) % 3], cyc[k], cyc[(k + 1) % 3]);
            let n = self.arcs(x, c);
            if n == 0 {
                central.push(Point::Vertex(c));
                continue;
            }
            out.push((Region::Corner(c), vec![Point::Vertex(c), self.point(c, next, 0), self.point(c, prev, 0)]));
            for i in 0..n - 1 {
                out.push((
                    Region::Strip(c, i),
                    vec![self.point(c, next, i), self.point(c, next, i + 1), self.point(c, prev, i + 1), self.point(c, prev, i)],
                ));
            }
            central.push(self.point(c, prev, n - 1));
            central.push(self.point(c, next, n - 1));
        }
        out.push((Region::Central, central));
        out
    }
}

/// A disc with its polygon and the cells on either side. Side 0 faces the
/// disc's vertex (triangles) or the vertex-0 side (quads).
struct DiscFace {
    id: usize,
    points: Vec<Point>,
    cells: [CellOrigin; 2],
}

enum FaceTag {
    Region(usize, Region),
    Disc(usize, usize),
}

/// Cuts `t` along the surface `v`, producing the induced cells with region
/// faces glued across the original face gluings and surface faces unglued.
pub fn cut_along(t: &Triangulation, v: &NormalVector) -> Result<CutComplex> {
    v.check_length(t)?;
    if let Some(&(tet, face)) = t.boundary_faces().first() {
        return Err(Error::BoundaryFacePresent { tet, face });
    }
    let mut surface = surface_invariants(t, v)?;
    let dc = DiscComplex::build(t, v);
    let disc_id: HashMap<(usize, DiscKind, usize), usize> =
        dc.discs.iter().enumerate().map(|(i, d)| ((d.tet, d.kind, d.index), i)).collect();

    let mut complex = CellComplex::new();
    let mut origins = Vec::new();
    let mut cell_of: HashMap<CellOrigin, usize> = HashMap::new();
    // (tet, face, region) -> (cell, face index, polygon)
    let mut region_face: HashMap<(usize, usize, Region), (usize, usize, Vec<Point>)> = HashMap::new();
    // (disc, side) -> (cell, face index)
    let mut disc_face: HashMap<(usize, usize), (usize, usize)> = HashMap::new();

    for tet in 0..t.tet_count() {
        let cut = TetCut { v, tet, quad: v.quad_of(tet).map(|(k, q)| (k, q as usize)) };
        let mut faces: HashMap<CellOrigin, Vec<(Vec<Point>, FaceMark, FaceTag)>> = HashMap::new();
        for x in 0..4 {
            for (r, poly) in cut.regions(x) {
                let mark = if matches!(r, Region::Strip(..)) { FaceMark::Bridge } else { FaceMark::Plain };
                faces.entry(cut.owner(x, r)).or_default().push((poly, mark, FaceTag::Region(x, r)));
            }
        }
        for d in tet_discs(&cut, &disc_id) {
            for side in 0..2 {
                faces.entry(d.cells[side]).or_default().push((d.points.clone(), FaceMark::Surface, FaceTag::Disc(d.id, side)));
            }
        }
        let mut keys: Vec<CellOrigin> = faces.keys().copied().collect();
        keys.sort();
        for key in keys {
            let list = &faces[&key];
            let names: Vec<Vec<String>> = list.iter().map(|(p, _, _)| p.iter().map(|x| x.name()).collect()).collect();
            let refs: Vec<Vec<&str>> = names.iter().map(|n| n.iter().map(|s| s.as_str()).collect()).collect();
            let faces: Vec<(&[&str], FaceMark)> = refs.iter().zip(list).map(|(r, (_, m, _))| (r.as_slice(), *m)).collect();
            let (cell, reversed) = polyhedron_from_names(&faces);
            let expected = expected_shape(&cut, key);
            let found = recognize(&cell).map(|(s, _)| s);
            if found != Some(expected) {
                return Err(Error::Structural(format!("induced cell {key:?} built as {found:?}, expected {expected}")));
            }
            let id = complex.add_cell(Cell { shape: Some(expected), ..cell });
            origins.push(key);
            cell_of.insert(key, id);
            for (fi, (poly, _, tag)) in list.iter().enumerate() {
                match *tag {
                    FaceTag::Region(x, r) => {
                        debug_assert!(!reversed[fi], "region face reversed");
                        region_face.insert((tet, x, r), (id, fi, poly.clone()));
                    }
                    FaceTag::Disc(d, side) => {
                        disc_face.insert((d, side), (id, fi));
                    }
                }
            }
        }
    }

    // Glue region faces across the triangulation's face gluings.
    let mut keys: Vec<(usize, usize, Region)> = region_face.keys().copied().collect();
    keys.sort_by_key(|&(t0, x, r)| (t0, x, region_order(r)));
    for (tet, x, r) in keys {
        let g = t.gluing(tet, x).expect("closed triangulation");
        let p = g.perm;
        let r2 = match r {
            Region::Corner(c) => Region::Corner(p.apply(c)),
            Region::Strip(c, i) => Region::Strip(p.apply(c), i),
            Region::Central => Region::Central,
        };
        let y = p.apply(x);
        if (tet, x) >= (g.tet, y) {
            continue;
        }
        let (ca, fa, ref pa) = region_face[&(tet, x, r)];
        let (cb, fb, ref pb) = region_face[&(g.tet, y, r2)];
        let target = TetCut { v, tet: g.tet, quad: v.quad_of(g.tet).map(|(k, q)| (k, q as usize)) };
        let ident = point_ident(pa, pb, p, |a, b| target.edge_len(a, b))?;
        complex.glue(ca, fa, cb, fb, ident.offset, ident.reflect)?;
    }
    complex.validate()?;

    // Remnants: sides of discs connected across arcs.
    let nd = dc.discs.len();
    let mut ruf = UnionFind::new(2 * nd);
    for tet in 0..t.tet_count() {
        for x in 0..4 {
            let g = t.gluing(tet, x).unwrap();
            for c in (0..4).filter(|&c| c != x) {
                for i in 0..v.arcs(tet, x, c) as usize {
                    let a = dc.arc_id(tet, x, c, i);
                    let b = dc.arc_id(g.tet, g.perm.apply(x), g.perm.apply(c), i);
                    let (da, _) = dc.arc_owner[a];
                    let (db, _) = dc.arc_owner[b];
                    let sa = toward_corner(&dc.discs[da].kind, c);
                    let sb = toward_corner(&dc.discs[db].kind, g.perm.apply(c));
                    ruf.union(2 * da + sa, 2 * db + sb);
                    ruf.union(2 * da + 1 - sa, 2 * db + 1 - sb);
                }
            }
        }
    }
    let mut remnant_of_root: HashMap<usize, usize> = HashMap::new();
    let mut remnants: Vec<Remnant> = Vec::new();
    for d in 0..nd {
        for side in 0..2 {
            let root = ruf.find(2 * d + side);
            let r = *remnant_of_root.entry(root).or_insert_with(|| {
                remnants.push(Remnant { surface_component: dc.disc_component[d], faces: Vec::new() });
                remnants.len() - 1
            });
            remnants[r].faces.push(disc_face[&(d, side)]);
        }
    }
    let mut per_component = vec![0usize; surface.components.len()];
    for r in &remnants {
        per_component[r.surface_component] += 1;
    }
    for (c, comp) in surface.components.iter_mut().enumerate() {
        match per_component[c] {
            1 => comp.two_sided = Some(false),
            2 => comp.two_sided = Some(true),
            n => return Err(Error::PropertyViolation(format!("surface component {c} has {n} remnants"))),
        }
    }
    let mut cuf = UnionFind::new(complex.len());
    for (a, _, g) in complex.glued_pairs() {
        cuf.union(a, g.cell);
    }
    let (component_of, component_count) = cuf.classes();
    Ok(CutComplex { complex, origins, remnants, surface, component_of, component_count, region_index: None })
}

fn region_order(r: Region) -> (usize, usize, usize) {
    match r {
        Region::Corner(c) => (0, c, 0),
        Region::Strip(c, i) => (1, c, i),
        Region::Central => (2, 0, 0),
    }
}

/// Side of a disc facing corner `c` of a face it crosses.
fn toward_corner(kind: &DiscKind, c: usize) -> usize {
    match *kind {
        DiscKind::Tri(_) => 0,
        DiscKind::Quad(k) => {
            if quad_first_side(k, c) {
                0
            } else {
                1
            }
        }
    }
}

fn tet_discs(cut: &TetCut, disc_id: &HashMap<(usize, DiscKind, usize), usize>) -> Vec<DiscFace> {
    let tet = cut.tet;
    let mut out = Vec::new();
    for vx in 0..4 {
        let others: Vec<usize> = (0..4).filter(|&w| w != vx).collect();
        let tv = cut.tri(vx);
        for i in 0..tv {
            let points = others.iter().map(|&w| cut.point(vx, w, i)).collect();
            let near = if i == 0 { CellOrigin::Corner { tet, v: vx } } else { CellOrigin::ParTri { tet, v: vx, j: i - 1 } };
            let far = if i + 1 < tv { CellOrigin::ParTri { tet, v: vx, j: i } } else { cut.inner(vx) };
            out.push(DiscFace { id: disc_id[&(tet, DiscKind::Tri(vx), i)], points, cells: [near, far] });
        }
    }
    if let Some((k, q)) = cut.quad {
        let [[a, b], [c, d]] = QUAD_SIDES[k];
        for i in 0..q {
            let points = vec![
                cut.point(a, c, cut.tri(a) + i),
                cut.point(a, d, cut.tri(a) + i),
                cut.point(b, d, cut.tri(b) + i),
                cut.point(b, c, cut.tri(b) + i),
            ];
            let near = if i == 0 { CellOrigin::Wedge { tet, side: 0 } } else { CellOrigin::ParQuad { tet, j: i - 1 } };
            let far = if i + 1 < q { CellOrigin::ParQuad { tet, j: i } } else { CellOrigin::Wedge { tet, side: 1 } };
            out.push(DiscFace { id: disc_id[&(tet, DiscKind::Quad(k), i)], points, cells: [near, far] });
        }
    }
    out
}

fn expected_shape(cut: &TetCut, o: CellOrigin) -> ShapeId {
    match o {
        CellOrigin::Corner { .. } => ShapeId::Corner,
        CellOrigin::ParTri { .. } => ShapeId::ParTri,
        CellOrigin::ParQuad { .. } => ShapeId::ParQuad,
        CellOrigin::Wedge { side, .. } => {
            let (k, _) = cut.quad.unwrap();
            ShapeId::wedge(QUAD_SIDES[k][side].iter().filter(|&&u| cut.tri(u) >= 1).count())
        }
        CellOrigin::Central { .. } => ShapeId::central((0..4).filter(|&u| cut.tri(u) >= 1).count()),
    }
}

/// Identification of two region polygons induced by the vertex map `p`.
fn point_ident(
    pa: &[Point],
    pb: &[Point],
    p: Perm4,
    len_b: impl Fn(usize, usize) -> usize,
) -> Result<Ident> {
    let map = |x: Point| match x {
        Point::Vertex(u) => Point::Vertex(p.apply(u)),
        Point::Edge(a, b, j) => {
            let (pa_, pb_) = (p.apply(a), p.apply(b));
            if pa_ < pb_ {
                Point::Edge(pa_, pb_, j)
            } else {
                Point::Edge(pb_, pa_, len_b(pb_, pa_) - 1 - j)
            }
        }
    };
    let n = pa.len();
    let pos = |x: Point| pb.iter().position(|&y| y == x);
    let m0 = pos(map(pa[0])).ok_or_else(|| Error::Structural("region faces do not match".into()))?;
    let m1 = pos(map(pa[1 % n])).ok_or_else(|| Error::Structural("region faces do not match".into()))?;
    let reflect = (m1 + 1) % n == m0;
    let ident = Ident::new(n, m0, reflect);
    for (k, &x) in pa.iter().enumerate() {
        if pb[ident.vertex(k)] != map(x) {
            return Err(Error::Structural("region face identification is not affine".into()));
        }
    }
    Ok(ident)
}
