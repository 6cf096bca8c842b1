use crate::cellcx::{cc_skeleton, classify_complex, recognize, CcSkeleton, Cell, CellComplex, ComponentClass, Ident, ShapeId, Side};
use crate::uf::ParityUnionFind;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::hash::{DefaultHasher, Hash, Hasher};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MoveKind {
    TriPillow,
    BigonPillow,
    BigonFace,
}

/// A move found in a particular complex; `stamp` ties it to that complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApplicableMove {
    pub kind: MoveKind,
    pub cell: usize,
    /// The bigon face, lowest of its 2-cell, for bigon-face moves.
    pub face: Option<usize>,
    pub stamp: u64,
}

/// Closed taxonomy of move outcomes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseTag {
    /// Pillow faces not glued to each other and not both boundary.
    TriPillowHomeomorphic,
    TriPillowBall,
    TriPillowS3,
    TriPillowL31,
    /// One invalid edge and a vertex with projective plane link.
    TriPillowInvalid,
    BigonPillowHomeomorphic,
    BigonPillowBall,
    BigonPillowS3,
    BigonPillowRp3,
    BigonPillowIdealRp2xi,
    BigonPillowTwoInvalidEdges,
    SinglePathSphereDisc,
    SinglePathSphereProjectivePlane,
    SinglePathSphereInvalidEdges,
    SinglePathSphereSphere,
    SinglePathProjectivePlane,
    SinglePathDisc,
    SeparatePathsSpheres,
    SeparatePathsProjectivePlanes,
    SeparatePathsInvalidEdge,
    SeparatePathsDisc,
    UnclassifiedBoundary,
}

impl CaseTag {
    pub fn as_str(&self) -> String {
        serde_json::to_value(self).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default()
    }

    /// Outcomes that create or expose an invalid edge.
    pub fn is_invalid_edge_case(&self) -> bool {
        matches!(self, CaseTag::SinglePathSphereInvalidEdges | CaseTag::SeparatePathsInvalidEdge)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LinkSummary {
    pub chi: i64,
    pub orientable: bool,
    pub boundary_circles: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Location {
    pub cell: usize,
    pub face: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Deltas {
    pub cells_removed: usize,
    pub two_cells_removed: usize,
    pub components_before: usize,
    pub components_after: usize,
    /// Components removed outright by the move, with their class.
    pub components_deleted: usize,
    pub deleted_class: Option<ComponentClass>,
    /// Edge classes the flattened face became.
    pub edges_created: usize,
    /// Whether the two edges of the flattened bigon were the same edge.
    pub identified_edges: bool,
    pub links_before: Vec<LinkSummary>,
    pub links_predicted: Vec<LinkSummary>,
    pub links_after: Vec<LinkSummary>,
    /// Outcome of the vertex-link surgery check, when it applies.
    pub link_check: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub kind: MoveKind,
    pub location: Location,
    pub case: CaseTag,
    pub deltas: Deltas,
}

pub fn stamp(c: &CellComplex) -> u64 {
    let mut h = DefaultHasher::new();
    c.hash(&mut h);
    h.finish()
}

fn shape_of(cell: &Cell) -> Option<ShapeId> {
    cell.shape.or_else(|| recognize(cell).map(|(s, _)| s))
}

/// Every pillow cell, then every bigon 2-cell by its lowest face.
pub fn find_moves(c: &CellComplex) -> Vec<ApplicableMove> {
    let st = stamp(c);
    let mut tri = Vec::new();
    let mut bigon = Vec::new();
    let mut faces = Vec::new();
    for (i, cell) in c.cells.iter().enumerate() {
        match shape_of(cell) {
            Some(ShapeId::TriPillow) => tri.push(ApplicableMove { kind: MoveKind::TriPillow, cell: i, face: None, stamp: st }),
            Some(ShapeId::BigonPillow) => {
                bigon.push(ApplicableMove { kind: MoveKind::BigonPillow, cell: i, face: None, stamp: st })
            }
            _ => {}
        }
        for f in cell.bigon_faces() {
            let lowest = match c.gluings[i][f] {
                Some(g) => (i, f) < (g.cell, g.face),
                None => true,
            };
            if lowest {
                faces.push(ApplicableMove { kind: MoveKind::BigonFace, cell: i, face: Some(f), stamp: st });
            }
        }
    }
    tri.into_iter().chain(bigon).chain(faces).collect()
}

pub fn apply_move(c: &CellComplex, m: &ApplicableMove) -> Result<(CellComplex, TraceEntry)> {
    if stamp(c) != m.stamp {
        return Err(Error::StaleMove("the complex changed since the move was found".into()));
    }
    let entry_shape = c.cells.get(m.cell).and_then(shape_of);
    match m.kind {
        MoveKind::TriPillow | MoveKind::BigonPillow => {
            let want = if m.kind == MoveKind::TriPillow { ShapeId::TriPillow } else { ShapeId::BigonPillow };
            if entry_shape != Some(want) {
                return Err(Error::StaleMove(format!("cell {} is not a {}", m.cell, want.name())));
            }
            let mut canon = want.canonical().clone();
            canon.benign = c.cells[m.cell].benign;
            if c.cells[m.cell] == canon {
                flatten_pillow(c, m.cell, want)
            } else {
                let mut relabelled = c.clone();
                relabelled.canonicalize_cell(m.cell)?;
                flatten_pillow(&relabelled, m.cell, want)
            }
        }
        MoveKind::BigonFace => {
            let f = m.face.ok_or_else(|| Error::StaleMove("bigon-face move without a face".into()))?;
            if c.cells.get(m.cell).map(|x| x.faces.len()) <= Some(f) || c.cells[m.cell].arity(f) != 2 {
                return Err(Error::StaleMove(format!("cell {} face {f} is not a bigon", m.cell)));
            }
            flatten_bigon_face(c, m.cell, f)
        }
    }
}

fn summary(l: &crate::tri_core::VertexLink) -> LinkSummary {
    LinkSummary { chi: l.chi, orientable: l.orientable, boundary_circles: l.boundary_circles }
}

fn pillow_links(c: &CellComplex, p: usize) -> Vec<LinkSummary> {
    let sk = cc_skeleton(c);
    let classes: BTreeSet<usize> = sk.vertex_of[p].iter().copied().collect();
    let mut out: Vec<LinkSummary> = classes.into_iter().map(|v| summary(&sk.links[v])).collect();
    out.sort();
    out
}

fn flatten_pillow(c: &CellComplex, p: usize, shape: ShapeId) -> Result<(CellComplex, TraceEntry)> {
    let tri = shape == ShapeId::TriPillow;
    let (g0, g1) = (c.gluings[p][0], c.gluings[p][1]);
    let before = cc_skeleton(c);
    let mut out = c.clone();
    let mut deltas = Deltas { cells_removed: 1, components_before: before.component_count, ..Deltas::default() };
    let case = match (g0, g1) {
        (Some(g), _) if g.cell == p => {
            // The pillow is a whole component.
            let report = classify_complex(c);
            let comp = &report.components[before.component_of[p]];
            let (o, r) = (g.ident.offset, g.ident.reflect);
            let (case, ok) = if tri {
                match (r, o) {
                    (true, 0) => (CaseTag::TriPillowS3, comp.class == ComponentClass::Closed),
                    (true, _) => (CaseTag::TriPillowL31, comp.class == ComponentClass::Closed),
                    (false, _) => (
                        CaseTag::TriPillowInvalid,
                        comp.invalid_edges == 1 && comp.vertices.iter().any(|l| l.chi == 1 && !l.orientable),
                    ),
                }
            } else {
                match (r, o) {
                    (true, 0) => (CaseTag::BigonPillowS3, comp.class == ComponentClass::Closed),
                    (true, _) => (CaseTag::BigonPillowRp3, comp.class == ComponentClass::Closed),
                    (false, 0) => (
                        CaseTag::BigonPillowIdealRp2xi,
                        comp.class == ComponentClass::Ideal && comp.vertices.iter().all(|l| l.chi == 1 && !l.orientable),
                    ),
                    (false, _) => (CaseTag::BigonPillowTwoInvalidEdges, comp.invalid_edges == 2),
                }
            };
            if !ok {
                return Err(Error::PropertyViolation(format!("pillow {p} tagged {} but its component is {:?}", case.as_str(), comp)));
            }
            deltas.links_before = pillow_links(c, p);
            deltas.components_deleted = 1;
            deltas.deleted_class = Some(comp.class);
            deltas.two_cells_removed = 1;
            case
        }
        (None, None) => {
            let report = classify_complex(c);
            let comp = &report.components[before.component_of[p]];
            if comp.class != ComponentClass::Bounded {
                return Err(Error::PropertyViolation(format!("unglued pillow {p} is not a ball: {:?}", comp.class)));
            }
            deltas.links_before = pillow_links(c, p);
            deltas.components_deleted = 1;
            deltas.deleted_class = Some(comp.class);
            deltas.two_cells_removed = 2;
            if tri {
                CaseTag::TriPillowBall
            } else {
                CaseTag::BigonPillowBall
            }
        }
        _ => {
            if let (Some(a), Some(b)) = (g0, g1) {
                let n = shape.canonical().arity(0);
                // a.ident: F0 -> A, own: F0 -> F1, b.ident: F1 -> B.
                let own = Ident::new(n, 0, true);
                let ident = b.ident.compose(&own).compose(&a.ident.inverse());
                out.unglue(p, 0);
                out.unglue(p, 1);
                out.glue(a.cell, a.face, b.cell, b.face, ident.offset, ident.reflect)?;
            }
            deltas.two_cells_removed = 1;
            if tri {
                CaseTag::TriPillowHomeomorphic
            } else {
                CaseTag::BigonPillowHomeomorphic
            }
        }
    };
    out.remove_cell(p);
    deltas.components_after = cc_skeleton(&out).component_count;
    let kind = if tri { MoveKind::TriPillow } else { MoveKind::BigonPillow };
    Ok((out, TraceEntry { kind, location: Location { cell: p, face: None }, case, deltas }))
}

/// Class of the edge on side `j` of face `f` of `cell`, and whether the side
/// runs along the class orientation.
fn side_class(sk: &CcSkeleton, c: &CellComplex, cell: usize, f: usize, j: usize) -> (usize, bool) {
    let s = c.cells[cell].faces[f][j];
    (sk.edge_of[cell][s.edge], s.forward ^ sk.edge_flip[cell][s.edge])
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Piece {
    Disc,
    Sphere,
    Projective,
}

fn lone_piece(a: (usize, bool), b: (usize, bool)) -> Piece {
    if a.0 != b.0 {
        Piece::Disc
    } else if a.1 != b.1 {
        Piece::Sphere
    } else {
        Piece::Projective
    }
}

/// Classifies the flatten of bigon face `(cell, f)` from the complex with the
/// face unglued, and checks the outcome against the glued complex.
fn classify_bigon_face(c: &CellComplex, dagger: &CellComplex, cell: usize, f: usize) -> Result<CaseTag> {
    let Some(g) = c.gluings[cell][f] else { return Ok(CaseTag::UnclassifiedBoundary) };
    let sk = cc_skeleton(dagger);
    let a = [side_class(&sk, dagger, cell, f, 0), side_class(&sk, dagger, cell, f, 1)];
    let b = [side_class(&sk, dagger, g.cell, g.face, 0), side_class(&sk, dagger, g.cell, g.face, 1)];
    let sk0 = cc_skeleton(c);
    let f0 = [side_class(&sk0, c, cell, f, 0), side_class(&sk0, c, cell, f, 1)];
    // Edges already invalid without F, or on the boundary, are not classified.
    if a.iter().chain(&b).any(|x| !sk.edges[x.0].valid) || f0.iter().any(|x| sk0.edges[x.0].boundary) {
        return Ok(CaseTag::UnclassifiedBoundary);
    }
    let same0 = f0[0].0 == f0[1].0;
    let valid0 = f0.iter().all(|x| sk0.edges[x.0].valid);
    let shared = (0..2).flat_map(|i| (0..2).map(move |j| (i, j))).find(|&(i, j)| a[i].0 == b[j].0);
    let (case, consistent) = match shared {
        Some((i, j)) => {
            let flip = a[i].1 == b[j].1;
            let (ea, eb) = (a[1 - i], b[1 - j]);
            if ea.0 != eb.0 {
                (CaseTag::SinglePathDisc, true)
            } else if ea.1 == (eb.1 ^ flip) {
                (CaseTag::SinglePathProjectivePlane, true)
            } else {
                // Orientation of the gluing relative to the sphere the two
                // halves form, rather than to their cells.
                let reversing = g.ident.reflect ^ flip;
                let own = a[0].0 == b[g.ident.side(0)].0;
                match (reversing, own) {
                    (true, true) => (CaseTag::SinglePathSphereDisc, !same0 && valid0),
                    (true, false) => (CaseTag::SinglePathSphereProjectivePlane, same0 && valid0 && f0[0].1 == f0[1].1),
                    (false, true) => (CaseTag::SinglePathSphereInvalidEdges, !valid0),
                    (false, false) => (CaseTag::SinglePathSphereSphere, same0 && valid0 && f0[0].1 != f0[1].1),
                }
            }
        }
        None => match (lone_piece(a[0], a[1]), lone_piece(b[0], b[1])) {
            (Piece::Disc, _) | (_, Piece::Disc) => (CaseTag::SeparatePathsDisc, true),
            (Piece::Sphere, Piece::Sphere) => (CaseTag::SeparatePathsSpheres, same0 && valid0 && f0[0].1 != f0[1].1),
            (Piece::Projective, Piece::Projective) => {
                (CaseTag::SeparatePathsProjectivePlanes, same0 && valid0 && f0[0].1 == f0[1].1)
            }
            _ => (CaseTag::SeparatePathsInvalidEdge, same0 && !valid0),
        },
    };
    if !consistent {
        return Err(Error::PropertyViolation(format!(
            "bigon face ({cell}, {f}) tagged {} but the glued complex disagrees",
            case.as_str()
        )));
    }
    Ok(case)
}

/// Removes the given unglued bigon faces of cell `ci`, merging the two edges
/// of each. Other faces keep their positions, so gluings stay valid. Returns
/// the merged edges as `(cell, new edge)`.
fn collapse_faces(out: &mut CellComplex, ci: usize, faces: &[usize]) -> Result<Vec<(usize, usize)>> {
    let cell = &out.cells[ci];
    let ne = cell.edges.len();
    let mut uf = ParityUnionFind::new(ne);
    for &f in faces {
        let (s0, s1) = (cell.faces[f][0], cell.faces[f][1]);
        if !uf.union(s0.edge, s1.edge, s0.forward == s1.forward) {
            return Err(Error::CatalogEscape(format!("flattening cell {ci} face {f} folds an edge onto itself")));
        }
    }
    let mut new_edge = vec![usize::MAX; ne];
    let mut flip = vec![false; ne];
    let mut edges = Vec::new();
    let mut rep_index: BTreeMap<usize, (usize, bool)> = BTreeMap::new();
    for e in 0..ne {
        let (r, p) = uf.find(e);
        let (idx, p0) = *rep_index.entry(r).or_insert_with(|| {
            edges.push(cell.edges[e]);
            (edges.len() - 1, p)
        });
        new_edge[e] = idx;
        flip[e] = p != p0;
    }
    let cell_edges_of_face: BTreeMap<usize, usize> = faces.iter().map(|&f| (f, cell.faces[f][0].edge)).collect();
    let drop: BTreeSet<usize> = faces.iter().copied().collect();
    let mut face_map = vec![None; cell.faces.len()];
    let mut new_faces = Vec::new();
    for (f, sides) in cell.faces.iter().enumerate() {
        if drop.contains(&f) {
            continue;
        }
        face_map[f] = Some(new_faces.len());
        new_faces.push(sides.iter().map(|s| Side { edge: new_edge[s.edge], forward: s.forward ^ flip[s.edge] }).collect());
    }
    let marks = face_map.iter().zip(&cell.marks).filter(|(m, _)| m.is_some()).map(|(_, &k)| k).collect();
    let new_cell = Cell { shape: None, benign: cell.benign, num_vertices: cell.num_vertices, edges, faces: new_faces, marks };
    new_cell.check().map_err(|e| Error::CatalogEscape(format!("cell {ci} after flattening: {e}")))?;
    for row in out.gluings.iter_mut() {
        for g in row.iter_mut().flatten() {
            if g.cell == ci {
                g.face = face_map[g.face].expect("collapsed faces are unglued");
            }
        }
    }
    let old = std::mem::take(&mut out.gluings[ci]);
    out.gluings[ci] = old.into_iter().enumerate().filter(|(f, _)| !drop.contains(f)).map(|(_, g)| g).collect();
    out.cells[ci] = new_cell;
    Ok(faces.iter().map(|&f| (ci, new_edge[cell_edges_of_face[&f]])).collect())
}

fn flatten_bigon_face(c: &CellComplex, cell: usize, f: usize) -> Result<(CellComplex, TraceEntry)> {
    let partner = c.gluings[cell][f];
    let mut dagger = c.clone();
    dagger.unglue(cell, f);
    let case = classify_bigon_face(c, &dagger, cell, f)?;

    let sk0 = cc_skeleton(c);
    let f0 = [side_class(&sk0, c, cell, f, 0), side_class(&sk0, c, cell, f, 1)];
    let identified = f0[0].0 == f0[1].0;
    let internal = partner.is_some() && f0.iter().all(|x| !sk0.edges[x.0].boundary);
    let mut corners = vec![(cell, f)];
    if let Some(g) = partner {
        corners.push((g.cell, g.face));
    }
    let incident: BTreeSet<usize> = corners
        .iter()
        .flat_map(|&(ci, fi)| (0..2).map(move |k| (ci, fi, k)))
        .map(|(ci, fi, k)| sk0.vertex_of[ci][c.cells[ci].corner_vertex(fi, k)])
        .collect();
    let members: Vec<(usize, usize)> = incident.iter().flat_map(|&v| sk0.vertices[v].iter().copied()).collect();

    // Prediction: cut the links along F, then cap each new boundary circle.
    let skd = cc_skeleton(&dagger);
    let dagger_classes: BTreeSet<usize> = members.iter().map(|&(ci, v)| skd.vertex_of[ci][v]).collect();
    let mut predicted = Vec::new();
    for &v in &dagger_classes {
        let circles: BTreeSet<usize> = corners
            .iter()
            .flat_map(|&(ci, fi)| (0..2).map(move |k| (ci, fi, k)))
            .filter(|&(ci, fi, k)| skd.vertex_of[ci][dagger.cells[ci].corner_vertex(fi, k)] == v)
            .map(|key| skd.corner_circle[&key])
            .collect();
        let l = &skd.links[v];
        let n = circles.len();
        predicted.push(LinkSummary { chi: l.chi + n as i64, orientable: l.orientable, boundary_circles: l.boundary_circles - n });
    }

    let mut out = dagger;
    let merged = match partner {
        Some(g) if g.cell == cell => collapse_faces(&mut out, cell, &[f, g.face])?,
        Some(g) => {
            let mut m = collapse_faces(&mut out, cell, &[f])?;
            m.extend(collapse_faces(&mut out, g.cell, &[g.face])?);
            m
        }
        None => collapse_faces(&mut out, cell, &[f])?,
    };
    let touched: BTreeSet<usize> = corners.iter().map(|&(ci, _)| ci).collect();

    let sk1 = cc_skeleton(&out);
    let after_classes: BTreeSet<usize> = members.iter().map(|&(ci, v)| sk1.vertex_of[ci][v]).collect();
    let mut after = Vec::new();
    let mut check = true;
    for (&v, p) in dagger_classes.iter().zip(&predicted) {
        // Vertex classes correspond one to one across the collapse.
        let &(ci, lv) = skd.vertices[v].first().expect("classes are nonempty");
        let l = summary(&sk1.links[sk1.vertex_of[ci][lv]]);
        check &= l == *p;
        after.push(l);
    }
    check &= after_classes.len() == dagger_classes.len();
    let edges_created: BTreeSet<usize> = merged.iter().map(|&(ci, e)| sk1.edge_of[ci][e]).collect();

    let mut links_before: Vec<LinkSummary> = incident.iter().map(|&v| summary(&sk0.links[v])).collect();
    links_before.sort();
    predicted.sort();
    after.sort();
    let link_check = internal.then_some(check);
    if link_check == Some(false) {
        return Err(Error::PropertyViolation(format!(
            "vertex links after flattening ({cell}, {f}) are {after:?}, expected {predicted:?}"
        )));
    }
    for &ci in &touched {
        let shape = recognize(&out.cells[ci]).map(|(s, _)| s);
        match shape {
            Some(s) if s.is_destructible() => {
                out.canonicalize_cell(ci)?;
            }
            _ => {
                return Err(Error::CatalogEscape(format!(
                    "flattening ({cell}, {f}) leaves cell {ci} outside the destructible catalog ({shape:?})"
                )))
            }
        }
    }
    let deltas = Deltas {
        cells_removed: 0,
        two_cells_removed: 1,
        components_before: sk0.component_count,
        components_after: sk1.component_count,
        components_deleted: 0,
        deleted_class: None,
        edges_created: edges_created.len(),
        identified_edges: identified,
        links_before,
        links_predicted: if internal { predicted } else { Vec::new() },
        links_after: after,
        link_check,
    };
    Ok((out, TraceEntry { kind: MoveKind::BigonFace, location: Location { cell, face: Some(f) }, case, deltas }))
}
