use super::complex::CellComplex;
use crate::tri_core::{VertexKind, VertexLink};
use crate::uf::{ParityUnionFind, UnionFind};
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CcEdge {
    /// `(cell, local edge)` germs.
    pub members: Vec<(usize, usize)>,
    pub valid: bool,
    pub boundary: bool,
}

/// Vertex, edge and component classes of a cell complex together with the
/// vertex links, all derived from the gluing table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CcSkeleton {
    /// Vertex class of each local vertex, per cell.
    pub vertex_of: Vec<Vec<usize>>,
    /// `(cell, local vertex)` members of each vertex class.
    pub vertices: Vec<Vec<(usize, usize)>>,
    pub links: Vec<VertexLink>,
    pub edge_of: Vec<Vec<usize>>,
    /// Whether each local edge runs against its class representative.
    pub edge_flip: Vec<Vec<bool>>,
    pub edges: Vec<CcEdge>,
    pub component_of: Vec<usize>,
    pub component_count: usize,
    /// Boundary circle of each corner `(cell, face, position)` of an unglued
    /// face, as an id shared by all corners on the same link circle.
    pub corner_circle: BTreeMap<(usize, usize, usize), usize>,
}

struct Index {
    ee: Vec<usize>,
    corner: Vec<Vec<usize>>,
    vertex: Vec<usize>,
    edge: Vec<usize>,
    ee_total: usize,
    corner_total: usize,
    vertex_total: usize,
    edge_total: usize,
}

fn index(c: &CellComplex) -> Index {
    let (mut ee, mut corner, mut vertex, mut edge) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    let (mut ne, mut nc, mut nv, mut ned) = (0, 0, 0, 0);
    for cell in &c.cells {
        ee.push(ne);
        ne += 2 * cell.edges.len();
        edge.push(ned);
        ned += cell.edges.len();
        vertex.push(nv);
        nv += cell.num_vertices;
        let mut row = Vec::new();
        for f in 0..cell.faces.len() {
            row.push(nc);
            nc += cell.arity(f);
        }
        corner.push(row);
    }
    Index { ee, corner, vertex, edge, ee_total: ne, corner_total: nc, vertex_total: nv, edge_total: ned }
}

/// Computes all skeleton classes and links; `c` must pass `validate`.
pub fn cc_skeleton(c: &CellComplex) -> CcSkeleton {
    let ix = index(c);
    let cells = &c.cells;
    // Edge end at position `p` of side `j` of face `f`.
    let ee_at = |cell: usize, f: usize, j: usize, p: usize| {
        let s = cells[cell].faces[f][j];
        let at_start = p == j;
        let end = if at_start == s.forward { 0 } else { 1 };
        ix.ee[cell] + 2 * s.edge + end
    };
    let mut vuf = UnionFind::new(ix.vertex_total);
    let mut euf = ParityUnionFind::new(ix.edge_total);
    let mut ee_uf = UnionFind::new(ix.ee_total);
    let mut corner_uf = UnionFind::new(ix.corner_total);
    let mut poly = ParityUnionFind::new(ix.vertex_total);
    let mut cell_uf = UnionFind::new(cells.len());
    let mut edge_constraints = Vec::new();
    let mut poly_constraints = Vec::new();
    for (a, fa, g) in c.glued_pairs() {
        let (b, fb, id) = (g.cell, g.face, g.ident);
        let n = id.n;
        cell_uf.union(a, b);
        for k in 0..n {
            let m = id.vertex(k);
            let (va, vb) = (cells[a].corner_vertex(fa, k), cells[b].corner_vertex(fb, m));
            vuf.union(ix.vertex[a] + va, ix.vertex[b] + vb);
            corner_uf.union(ix.corner[a][fa] + k, ix.corner[b][fb] + m);
            poly_constraints.push((ix.vertex[a] + va, ix.vertex[b] + vb, !id.reflect));
            let j = id.side(k);
            let (sa, sb) = (cells[a].faces[fa][k], cells[b].faces[fb][j]);
            let odd = sa.forward ^ sb.forward ^ id.reflect;
            edge_constraints.push((ix.edge[a] + sa.edge, ix.edge[b] + sb.edge, odd));
            ee_uf.union(ee_at(a, fa, k, k), ee_at(b, fb, j, m));
            ee_uf.union(ee_at(a, fa, k, (k + 1) % n), ee_at(b, fb, j, id.vertex(k + 1)));
        }
    }
    for &[(c1, v1), (c2, v2)] in &c.debris.vertex_pinches {
        vuf.union(ix.vertex[c1] + v1, ix.vertex[c2] + v2);
        cell_uf.union(c1, c2);
    }
    for &(x, y, odd) in &edge_constraints {
        euf.union(x, y, odd);
    }
    for &(x, y, odd) in &poly_constraints {
        poly.union(x, y, odd);
    }

    let (vclass, nvc) = vuf.classes();
    let mut vertex_of = Vec::new();
    let mut vertices = vec![Vec::new(); nvc];
    for (ci, cell) in cells.iter().enumerate() {
        let row: Vec<usize> = (0..cell.num_vertices).map(|v| vclass[ix.vertex[ci] + v]).collect();
        for (v, &k) in row.iter().enumerate() {
            vertices[k].push((ci, v));
        }
        vertex_of.push(row);
    }

    // Edges.
    let (eclass, nec) = euf.classes();
    let mut edge_of = Vec::new();
    let mut edge_flip = Vec::new();
    let mut edges: Vec<CcEdge> = vec![CcEdge { members: Vec::new(), valid: true, boundary: false }; nec];
    for (ci, cell) in cells.iter().enumerate() {
        let mut row = Vec::new();
        let mut flips = Vec::new();
        for e in 0..cell.edges.len() {
            let x = ix.edge[ci] + e;
            let k = eclass[x];
            if euf.has_conflict(x) {
                edges[k].valid = false;
            }
            edges[k].members.push((ci, e));
            row.push(k);
            flips.push(euf.find(x).1);
        }
        edge_of.push(row);
        edge_flip.push(flips);
    }
    // Normalise flips so the lowest member of each class runs forward.
    let mut rep_flip: Vec<Option<bool>> = vec![None; nec];
    for ci in 0..cells.len() {
        for e in 0..cells[ci].edges.len() {
            let k = edge_of[ci][e];
            let r = *rep_flip[k].get_or_insert(edge_flip[ci][e]);
            edge_flip[ci][e] ^= r;
        }
    }
    for (ci, row) in c.gluings.iter().enumerate() {
        for (f, g) in row.iter().enumerate() {
            if g.is_none() {
                for s in &cells[ci].faces[f] {
                    edges[edge_of[ci][s.edge]].boundary = true;
                }
            }
        }
    }

    // Links.
    let (ee_class, _) = ee_uf.classes();
    let (corner_class, _) = corner_uf.classes();
    let ee_vertex = |x: usize| -> usize {
        // x is a flat edge-end index; find its cell by binary search.
        let ci = ix.ee.partition_point(|&b| b <= x) - 1;
        let local = x - ix.ee[ci];
        let (e, end) = (local / 2, local % 2);
        vclass[ix.vertex[ci] + cells[ci].edges[e][end]]
    };
    let mut link_v: Vec<Vec<usize>> = vec![Vec::new(); nvc];
    for x in 0..ix.ee_total {
        link_v[ee_vertex(x)].push(ee_class[x]);
    }
    let mut link_e: Vec<Vec<usize>> = vec![Vec::new(); nvc];
    let mut boundary_uf = UnionFind::new(ix.ee_total);
    let mut boundary_ee: Vec<Vec<usize>> = vec![Vec::new(); nvc];
    let mut boundary_corner_ee = Vec::new();
    for (ci, cell) in cells.iter().enumerate() {
        for f in 0..cell.faces.len() {
            let n = cell.arity(f);
            for k in 0..n {
                let v = vclass[ix.vertex[ci] + cell.corner_vertex(f, k)];
                link_e[v].push(corner_class[ix.corner[ci][f] + k]);
                if c.gluings[ci][f].is_none() {
                    let prev = (k + n - 1) % n;
                    let x = ee_class[ee_at(ci, f, prev, k)];
                    let y = ee_class[ee_at(ci, f, k, k)];
                    boundary_uf.union(x, y);
                    boundary_ee[v].push(x);
                    boundary_corner_ee.push(((ci, f, k), x));
                }
            }
        }
    }
    let mut links = Vec::with_capacity(nvc);
    for v in 0..nvc {
        let mut lv = std::mem::take(&mut link_v[v]);
        lv.sort_unstable();
        lv.dedup();
        let mut le = std::mem::take(&mut link_e[v]);
        le.sort_unstable();
        le.dedup();
        let faces = vertices[v].len();
        let chi = lv.len() as i64 - le.len() as i64 + faces as i64;
        let mut roots: Vec<usize> = boundary_ee[v].iter().map(|&x| boundary_uf.find(x)).collect();
        roots.sort_unstable();
        roots.dedup();
        let mut orientable = true;
        let mut poly_roots = Vec::new();
        for &(ci, lvx) in &vertices[v] {
            let x = ix.vertex[ci] + lvx;
            if poly.has_conflict(x) {
                orientable = false;
            }
            poly_roots.push(poly.find(x).0);
        }
        poly_roots.sort_unstable();
        poly_roots.dedup();
        let connected = poly_roots.len() == 1;
        let kind = VertexKind::from_link(chi, orientable, roots.len(), connected);
        links.push(VertexLink { chi, orientable, boundary_circles: roots.len(), kind, degree: faces });
    }

    let corner_circle = boundary_corner_ee.into_iter().map(|(key, x)| (key, boundary_uf.find(x))).collect();
    let (component_of, component_count) = cell_uf.classes();
    CcSkeleton { vertex_of, vertices, links, edge_of, edge_flip, edges, component_of, component_count, corner_circle }
}
