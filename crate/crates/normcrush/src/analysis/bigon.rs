use crate::cellcx::{cc_skeleton, CellComplex};
use crate::tri_core::VertexKind;
use crate::uf::{ParityUnionFind, UnionFind};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PathPlacement {
    Internal,
    Boundary,
    Mixed,
}

/// A maximal chain of bigon 2-cells, consecutive ones sharing an edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BigonPath {
    /// Each bigon 2-cell as its lowest `(cell, face)`.
    pub bigons: Vec<(usize, usize)>,
    /// Edge classes `e_0 .. e_n`; bigon `i` joins `edges[i]` and `edges[i + 1]`.
    pub edges: Vec<usize>,
    /// The end edges coincide.
    pub closed: bool,
    /// Every edge class on the path has degree two in the bigon graph.
    pub cycle: bool,
    pub placement: PathPlacement,
    /// Euler characteristic of the path once ideal and invalid vertices are
    /// truncated.
    pub truncated_chi: i64,
    pub orientable: bool,
    pub truncated_corners: usize,
    pub corners: usize,
    /// Vertex classes whose links the truncated path meets.
    pub link_vertices: Vec<usize>,
    /// Internal, closed, orientable, every corner truncated and χ = 0: the
    /// truncated path is an annulus that may be boundary parallel. A warning,
    /// not a verdict.
    pub bad_candidate: bool,
}

struct Bigon {
    rep: (usize, usize),
    glued: bool,
    /// (edge class, runs along the class orientation) per side.
    sides: [(usize, bool); 2],
    /// Vertex class at each corner.
    corners: [usize; 2],
}

/// All maximal bigon paths and bigon cycles, each bigon 2-cell in exactly one.
pub fn enumerate_bigon_paths(c: &CellComplex) -> Vec<BigonPath> {
    let sk = cc_skeleton(c);
    let mut bigons = Vec::new();
    for (ci, cell) in c.cells.iter().enumerate() {
        for f in cell.bigon_faces() {
            let g = c.gluings[ci][f];
            if g.is_some_and(|g| (g.cell, g.face) < (ci, f)) {
                continue;
            }
            let side = |j: usize| {
                let s = cell.faces[f][j];
                (sk.edge_of[ci][s.edge], s.forward ^ sk.edge_flip[ci][s.edge])
            };
            let corner = |j: usize| sk.vertex_of[ci][cell.corner_vertex(f, j)];
            bigons.push(Bigon { rep: (ci, f), glued: g.is_some(), sides: [side(0), side(1)], corners: [corner(0), corner(1)] });
        }
    }
    // Bigon graph: nodes are edge classes.
    let mut incident: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, b) in bigons.iter().enumerate() {
        incident.entry(b.sides[0].0).or_default().push(i);
        incident.entry(b.sides[1].0).or_default().push(i);
    }
    let degree = |e: usize| incident.get(&e).map_or(0, |v| v.len());
    let mut used = vec![false; bigons.len()];
    let mut paths = Vec::new();
    let walk = |start_edge: usize, first: usize, used: &mut Vec<bool>| -> (Vec<usize>, Vec<usize>) {
        let mut seq = Vec::new();
        let mut edges = vec![start_edge];
        let (mut at, mut b) = (start_edge, first);
        loop {
            used[b] = true;
            seq.push(b);
            let s = bigons[b].sides;
            let next = if s[0].0 == at { s[1].0 } else { s[0].0 };
            edges.push(next);
            at = next;
            if degree(at) != 2 {
                break;
            }
            match incident[&at].iter().find(|&&x| !used[x]) {
                Some(&x) => b = x,
                None => break,
            }
        }
        (seq, edges)
    };
    let ends: Vec<usize> = incident.keys().copied().filter(|&e| degree(e) != 2).collect();
    for e in ends {
        for &b in &incident[&e].clone() {
            if !used[b] {
                let (seq, edges) = walk(e, b, &mut used);
                paths.push((seq, edges, false));
            }
        }
    }
    for b in 0..bigons.len() {
        if !used[b] {
            let e = bigons[b].sides[0].0;
            let (seq, edges) = walk(e, b, &mut used);
            paths.push((seq, edges, true));
        }
    }
    let truncated = |v: usize| matches!(sk.links[v].kind, VertexKind::Ideal | VertexKind::Invalid);
    let edge_end = |e: usize, end: usize| {
        let (ci, le) = sk.edges[e].members[0];
        let [t, h] = c.cells[ci].edges[le];
        let (t, h) = if sk.edge_flip[ci][le] { (h, t) } else { (t, h) };
        sk.vertex_of[ci][if end == 0 { t } else { h }]
    };
    paths
        .into_iter()
        .map(|(seq, edges, cycle)| {
            let members: Vec<&Bigon> = seq.iter().map(|&i| &bigons[i]).collect();
            let classes: BTreeSet<usize> = members.iter().flat_map(|b| b.sides.iter().map(|s| s.0)).collect();
            let index: BTreeMap<usize, usize> = classes.iter().enumerate().map(|(i, &e)| (e, i)).collect();
            // Surface points at edge ends: 2 per edge class, merged at corners.
            let mut points = UnionFind::new(2 * classes.len());
            let start = |s: (usize, bool)| 2 * index[&s.0] + usize::from(!s.1);
            let finish = |s: (usize, bool)| 2 * index[&s.0] + usize::from(s.1);
            for b in &members {
                for k in 0..2 {
                    points.union(start(b.sides[k]), finish(b.sides[1 - k]));
                }
            }
            let mut v_untruncated = BTreeSet::new();
            let mut v_truncated = 0i64;
            for (&e, &i) in &index {
                for end in 0..2 {
                    if truncated(edge_end(e, end)) {
                        v_truncated += 1;
                    } else {
                        v_untruncated.insert(points.find(2 * i + end));
                    }
                }
            }
            let corners = 2 * members.len();
            let truncated_corners = members.iter().flat_map(|b| b.corners).filter(|&v| truncated(v)).count();
            let chi = v_untruncated.len() as i64 + v_truncated - (classes.len() + truncated_corners) as i64
                + members.len() as i64;
            let mut orient = ParityUnionFind::new(members.len());
            let mut orientable = true;
            let mut by_class: BTreeMap<usize, Vec<(usize, bool)>> = BTreeMap::new();
            for (i, b) in members.iter().enumerate() {
                for s in b.sides {
                    by_class.entry(s.0).or_default().push((i, s.1));
                }
            }
            for list in by_class.values() {
                for &(j, dj) in &list[1..] {
                    let (i, di) = list[0];
                    orientable &= orient.union(i, j, di == dj);
                }
            }
            let placement = if members.iter().all(|b| b.glued) {
                PathPlacement::Internal
            } else if members.iter().all(|b| !b.glued) {
                PathPlacement::Boundary
            } else {
                PathPlacement::Mixed
            };
            let closed = edges.first() == edges.last();
            let link_vertices: BTreeSet<usize> = members.iter().flat_map(|b| b.corners).filter(|&v| truncated(v)).collect();
            let bad_candidate = placement == PathPlacement::Internal
                && closed
                && orientable
                && truncated_corners == corners
                && chi == 0;
            BigonPath {
                bigons: members.iter().map(|b| b.rep).collect(),
                edges,
                closed,
                cycle,
                placement,
                truncated_chi: chi,
                orientable,
                truncated_corners,
                corners,
                link_vertices: link_vertices.into_iter().collect(),
                bad_candidate,
            }
        })
        .collect()
}
