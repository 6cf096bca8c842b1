use super::vector::{check_admissible, quad_crosses, NormalVector, QUAD_SIDES};
use crate::tri_core::{compute_skeleton, edge_index, Triangulation, EDGE_VERTICES};
use crate::uf::{ParityUnionFind, UnionFind};
use crate::{Error, Result};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum DiscKind {
    /// Triangle cutting off a vertex.
    Tri(usize),
    /// Quadrilateral of the given type.
    Quad(usize),
}

/// An elementary disc. `points[j]` and `points[j+1]` are joined by arc `arcs[j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Disc {
    pub tet: usize,
    pub kind: DiscKind,
    /// Position in its stack: triangles from their vertex, quads from the
    /// vertex-0 side.
    pub index: usize,
    pub points: Vec<usize>,
    /// `(arc id, runs in the arc's canonical direction)`.
    pub arcs: Vec<(usize, bool)>,
}

/// Arc `(x, v, i)`: the `i`-th normal arc from corner `v` in face `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub tet: usize,
    pub face: usize,
    pub corner: usize,
    pub index: usize,
}

/// The elementary discs of a normal vector glued along arcs.
#[derive(Debug, Clone)]
pub struct DiscComplex {
    pub discs: Vec<Disc>,
    pub arcs: Vec<Arc>,
    /// Disc owning each arc, with the traversal direction.
    pub arc_owner: Vec<(usize, bool)>,
    arc_base: Vec<[[usize; 4]; 4]>,
    point_base: Vec<[usize; 6]>,
    point_len: Vec<[usize; 6]>,
    pub point_count: usize,
    pub point_class: Vec<usize>,
    pub point_class_count: usize,
    pub arc_class: Vec<usize>,
    pub arc_class_count: usize,
    pub disc_component: Vec<usize>,
    pub component_count: usize,
    /// Per component: whether the arc gluings admit a coherent orientation.
    pub orientable: Vec<bool>,
    /// Disc orientation relative to its component's reference orientation.
    pub disc_flip: Vec<bool>,
}

impl DiscComplex {
    pub fn arc_id(&self, tet: usize, face: usize, corner: usize, index: usize) -> usize {
        self.arc_base[tet][face][corner] + index
    }

    /// Number of surface points on tetrahedron edge `e`.
    pub fn points_on_edge(&self, tet: usize, e: usize) -> usize {
        self.point_len[tet][e]
    }

    /// Point `j` from `u` along edge `uw`.
    pub fn point_id(&self, tet: usize, u: usize, w: usize, j: usize) -> usize {
        let e = edge_index(u, w);
        let j = if u < w { j } else { self.point_len[tet][e] - 1 - j };
        self.point_base[tet][e] + j
    }

    /// Builds discs and arcs for an admissible vector and glues them across
    /// the triangulation's face gluings.
    pub fn build(t: &Triangulation, v: &NormalVector) -> DiscComplex {
        let n = t.tet_count();
        let mut arc_base = vec![[[usize::MAX; 4]; 4]; n];
        let mut arcs = Vec::new();
        for tet in 0..n {
            for x in 0..4 {
                for c in (0..4).filter(|&c| c != x) {
                    arc_base[tet][x][c] = arcs.len();
                    for i in 0..v.arcs(tet, x, c) as usize {
                        arcs.push(Arc { tet, face: x, corner: c, index: i });
                    }
                }
            }
        }
        let mut point_base = vec![[0; 6]; n];
        let mut point_len = vec![[0; 6]; n];
        let mut point_count = 0;
        for tet in 0..n {
            let quad = v.quad_of(tet);
            for (e, &(a, b)) in EDGE_VERTICES.iter().enumerate() {
                let q = match quad {
                    Some((k, q)) if quad_crosses(k, a, b) => q,
                    _ => 0,
                };
                let len = (v.tri(tet, a) + v.tri(tet, b) + q) as usize;
                point_base[tet][e] = point_count;
                point_len[tet][e] = len;
                point_count += len;
            }
        }
        let mut dc = DiscComplex {
            discs: Vec::new(),
            arc_owner: vec![(usize::MAX, false); arcs.len()],
            arcs,
            arc_base,
            point_base,
            point_len,
            point_count,
            point_class: Vec::new(),
            point_class_count: 0,
            arc_class: Vec::new(),
            arc_class_count: 0,
            disc_component: Vec::new(),
            component_count: 0,
            orientable: Vec::new(),
            disc_flip: Vec::new(),
        };
        for tet in 0..n {
            for vx in 0..4 {
                let others: Vec<usize> = (0..4).filter(|&w| w != vx).collect();
                for i in 0..v.tri(tet, vx) as usize {
                    // Cycle through edges (vx,a), (vx,b), (vx,c) for a < b < c.
                    let points = others.iter().map(|&w| dc.point_id(tet, vx, w, i)).collect();
                    let face_between = |p: usize, q: usize| 6 - vx - p - q;
                    let (a, b, c) = (others[0], others[1], others[2]);
                    let arcs = vec![
                        (dc.arc_id(tet, face_between(a, b), vx, i), true),
                        (dc.arc_id(tet, face_between(b, c), vx, i), true),
                        (dc.arc_id(tet, face_between(c, a), vx, i), false),
                    ];
                    dc.push_disc(Disc { tet, kind: DiscKind::Tri(vx), index: i, points, arcs });
                }
            }
            if let Some((k, q)) = v.quad_of(tet) {
                let [[a, b], [c, d]] = QUAD_SIDES[k];
                for i in 0..q as usize {
                    let (ta, tb, tc, td) =
                        (v.tri(tet, a) as usize, v.tri(tet, b) as usize, v.tri(tet, c) as usize, v.tri(tet, d) as usize);
                    let back = q as usize - 1 - i;
                    let points = vec![
                        dc.point_id(tet, a, c, ta + i),
                        dc.point_id(tet, a, d, ta + i),
                        dc.point_id(tet, b, d, tb + i),
                        dc.point_id(tet, b, c, tb + i),
                    ];
                    let arcs = vec![
                        (dc.arc_id(tet, b, a, ta + i), true),
                        (dc.arc_id(tet, c, d, td + back), true),
                        (dc.arc_id(tet, a, b, tb + i), false),
                        (dc.arc_id(tet, d, c, tc + back), false),
                    ];
                    dc.push_disc(Disc { tet, kind: DiscKind::Quad(k), index: i, points, arcs });
                }
            }
        }
        debug_assert!(dc.arc_owner.iter().all(|o| o.0 != usize::MAX));
        dc.glue(t, v);
        dc
    }

    fn push_disc(&mut self, d: Disc) {
        let id = self.discs.len();
        for &(a, fwd) in &d.arcs {
            self.arc_owner[a] = (id, fwd);
        }
        self.discs.push(d);
    }

    fn glue(&mut self, t: &Triangulation, v: &NormalVector) {
        let mut puf = UnionFind::new(self.point_count);
        let mut auf = UnionFind::new(self.arcs.len());
        let mut duf = ParityUnionFind::new(self.discs.len());
        for tet in 0..t.tet_count() {
            for x in 0..4 {
                let Some(g) = t.gluing(tet, x) else { continue };
                let p = |i: usize| g.perm.apply(i);
                let verts: Vec<usize> = (0..4).filter(|&w| w != x).collect();
                for (ai, &u) in verts.iter().enumerate() {
                    for &w in &verts[ai + 1..] {
                        let len = self.point_len[tet][edge_index(u, w)];
                        for j in 0..len {
                            puf.union(self.point_id(tet, u, w, j), self.point_id(g.tet, p(u), p(w), j));
                        }
                    }
                }
                for &c in &verts {
                    let ws: Vec<usize> = verts.iter().copied().filter(|&w| w != c).collect();
                    let flip = p(ws[0]) > p(ws[1]);
                    for i in 0..v.arcs(tet, x, c) as usize {
                        let a = self.arc_id(tet, x, c, i);
                        let b = self.arc_id(g.tet, p(x), p(c), i);
                        auf.union(a, b);
                        let (da, sa) = self.arc_owner[a];
                        let (db, sb) = self.arc_owner[b];
                        duf.union(da, db, (sa ^ flip) == sb);
                    }
                }
            }
        }
        let (pc, np) = puf.classes();
        let (ac, na) = auf.classes();
        self.point_class = pc;
        self.point_class_count = np;
        self.arc_class = ac;
        self.arc_class_count = na;
        let (comp, nc) = duf.classes();
        let mut orientable = vec![true; nc];
        let mut flips = Vec::with_capacity(self.discs.len());
        for d in 0..self.discs.len() {
            if duf.has_conflict(d) {
                orientable[comp[d]] = false;
            }
            flips.push(duf.find(d).1);
        }
        self.disc_component = comp;
        self.component_count = nc;
        self.orientable = orientable;
        self.disc_flip = flips;
    }

    /// (V, E, F) of each component.
    pub fn component_counts(&self) -> Vec<(usize, usize, usize)> {
        let mut seen_p = vec![false; self.point_class_count];
        let mut seen_a = vec![false; self.arc_class_count];
        let mut out = vec![(0, 0, 0); self.component_count];
        for (d, disc) in self.discs.iter().enumerate() {
            let c = self.disc_component[d];
            out[c].2 += 1;
            for &p in &disc.points {
                let k = self.point_class[p];
                if !seen_p[k] {
                    seen_p[k] = true;
                    out[c].0 += 1;
                }
            }
            for &(a, _) in &disc.arcs {
                let k = self.arc_class[a];
                if !seen_a[k] {
                    seen_a[k] = true;
                    out[c].1 += 1;
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurfaceComponent {
    pub discs: usize,
    pub chi: i64,
    pub orientable: bool,
    /// Filled in by cutting along the surface.
    pub two_sided: Option<bool>,
    /// Built from triangles only, hence a vertex link.
    pub vertex_linking: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurfaceReport {
    pub disc_count: u64,
    pub weight: u64,
    pub is_trivial: bool,
    pub euler: i64,
    pub components: Vec<SurfaceComponent>,
}

/// Weight of the surface: the number of points where it meets the edges of
/// the triangulation, counted once per edge class.
pub fn weight(t: &Triangulation, v: &NormalVector) -> Result<u64> {
    let sk = compute_skeleton(t)?;
    let mut total = 0;
    for class in &sk.edges {
        let mut w: Option<u64> = None;
        for &(tet, e) in &class.members {
            let (a, b) = EDGE_VERTICES[e];
            let q = match v.quad_of(tet) {
                Some((k, q)) if quad_crosses(k, a, b) => q,
                _ => 0,
            };
            let here = v.tri(tet, a) + v.tri(tet, b) + q;
            match w {
                None => w = Some(here),
                Some(x) if x != here => {
                    return Err(Error::PropertyViolation(format!(
                        "edge weight differs between incident tetrahedra ({x} vs {here})"
                    )))
                }
                _ => {}
            }
        }
        total += w.unwrap_or(0);
    }
    Ok(total)
}

pub fn surface_invariants(t: &Triangulation, v: &NormalVector) -> Result<SurfaceReport> {
    let adm = check_admissible(t, v)?;
    if !adm.admissible {
        return Err(Error::InadmissibleVector(format!("{:?}", adm.violation.unwrap())));
    }
    let dc = DiscComplex::build(t, v);
    let counts = dc.component_counts();
    let mut components: Vec<SurfaceComponent> = counts
        .iter()
        .enumerate()
        .map(|(c, &(vv, e, f))| SurfaceComponent {
            discs: f,
            chi: vv as i64 - e as i64 + f as i64,
            orientable: dc.orientable[c],
            two_sided: None,
            vertex_linking: true,
        })
        .collect();
    for (d, disc) in dc.discs.iter().enumerate() {
        if matches!(disc.kind, DiscKind::Quad(_)) {
            components[dc.disc_component[d]].vertex_linking = false;
        }
    }
    let euler = components.iter().map(|c| c.chi).sum();
    Ok(SurfaceReport { disc_count: v.disc_count(), weight: weight(t, v)?, is_trivial: v.is_trivial(), euler, components })
}
