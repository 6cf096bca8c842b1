use super::cut::{CellOrigin, CutComplex};
use crate::cellcx::{recognize, Cell, CellComplex, FaceMark, Ident, ShapeId, Side};
use crate::uf::UnionFind;
use crate::{Error, Result};

/// Shape an induced cell becomes once its surface faces are collapsed.
pub fn crushed_shape(o: &CellOrigin) -> ShapeId {
    match o {
        CellOrigin::Corner { .. } | CellOrigin::ParTri { .. } => ShapeId::Football3,
        CellOrigin::ParQuad { .. } => ShapeId::Football4,
        CellOrigin::Wedge { .. } => ShapeId::TriPurse,
        CellOrigin::Central { .. } => ShapeId::Tet,
    }
}

struct Collapsed {
    cell: Cell,
    /// Old face -> new face, for faces that survive.
    face: Vec<Option<usize>>,
    /// Old positions kept on each old face, in order.
    kept: Vec<Vec<usize>>,
}

/// Collapses every surface face of `cell` to a point of its own.
fn collapse(cell: &Cell) -> Result<Collapsed> {
    let mut uf = UnionFind::new(cell.num_vertices);
    let mut on_surface = vec![false; cell.edges.len()];
    for f in 0..cell.faces.len() {
        if cell.marks[f] != FaceMark::Surface {
            continue;
        }
        let vs = cell.face_vertices(f);
        for w in &vs[1..] {
            uf.union(vs[0], *w);
        }
        for s in &cell.faces[f] {
            on_surface[s.edge] = true;
        }
    }
    let mut new_vertex = vec![usize::MAX; cell.num_vertices];
    let mut root_id = vec![usize::MAX; cell.num_vertices];
    let mut nv = 0;
    for v in 0..cell.num_vertices {
        let r = uf.find(v);
        if root_id[r] == usize::MAX {
            root_id[r] = nv;
            nv += 1;
        }
        new_vertex[v] = root_id[r];
    }
    let mut new_edge = vec![usize::MAX; cell.edges.len()];
    let mut edges = Vec::new();
    for (e, &[a, b]) in cell.edges.iter().enumerate() {
        if on_surface[e] {
            continue;
        }
        if new_vertex[a] == new_vertex[b] {
            return Err(Error::Structural(format!("edge {e} would collapse to a loop")));
        }
        new_edge[e] = edges.len();
        edges.push([new_vertex[a], new_vertex[b]]);
    }
    let mut faces = Vec::new();
    let mut face = vec![None; cell.faces.len()];
    let mut kept = vec![Vec::new(); cell.faces.len()];
    for f in 0..cell.faces.len() {
        if cell.marks[f] == FaceMark::Surface {
            continue;
        }
        let mut sides = Vec::new();
        for (j, s) in cell.faces[f].iter().enumerate() {
            if !on_surface[s.edge] {
                kept[f].push(j);
                sides.push(Side { edge: new_edge[s.edge], forward: s.forward });
            }
        }
        face[f] = Some(faces.len());
        faces.push(sides);
    }
    let marks = vec![FaceMark::Plain; faces.len()];
    let out = Cell { shape: None, benign: cell.benign, num_vertices: nv, edges, faces, marks };
    out.check()?;
    Ok(Collapsed { cell: out, face, kept })
}

/// Collapses each remnant of the surface to a point. Cells of the chosen
/// region, if one is set, are marked benign.
pub fn nondestructive_crush(c: &CutComplex) -> Result<CellComplex> {
    let mut out = CellComplex::new();
    let mut pieces = Vec::with_capacity(c.complex.len());
    for (i, cell) in c.complex.cells.iter().enumerate() {
        let mut col = collapse(cell).map_err(|e| Error::Structural(format!("cell {i}: {e}")))?;
        let expected = crushed_shape(&c.origins[i]);
        let found = recognize(&col.cell).map(|(s, _)| s);
        if found != Some(expected) {
            return Err(Error::Structural(format!(
                "cell {i} ({:?}) collapsed to {found:?}, expected {expected}",
                c.origins[i]
            )));
        }
        col.cell.shape = Some(expected);
        col.cell.benign = c.region_index == Some(c.component_of[i]);
        out.add_cell(col.cell.clone());
        pieces.push(col);
    }
    for (a, fa, g) in c.complex.glued_pairs() {
        let (b, fb) = (g.cell, g.face);
        let (Some(na), Some(nb)) = (pieces[a].face[fa], pieces[b].face[fb]) else {
            return Err(Error::Structural(format!("surface face glued at cell {a} face {fa}")));
        };
        let (ka, kb) = (&pieces[a].kept[fa], &pieces[b].kept[fb]);
        let n = ka.len();
        let mut ident: Option<Ident> = None;
        for (k, &p) in ka.iter().enumerate() {
            let j = kb.iter().position(|&q| q == g.ident.side(p)).ok_or_else(|| {
                Error::Structural(format!("cell {a} face {fa}: a kept side maps onto the surface"))
            })?;
            let here = Ident::from_sides(n, k, j, g.ident.reflect);
            match ident {
                None => ident = Some(here),
                Some(x) if x != here => {
                    return Err(Error::Structural(format!("cell {a} face {fa}: collapsed gluing is not affine")))
                }
                _ => {}
            }
        }
        let ident = ident.expect("faces keep at least two sides");
        out.glue(a, na, b, nb, ident.offset, ident.reflect)?;
    }
    out.canonicalize()?;
    out.validate()?;
    Ok(out)
}
