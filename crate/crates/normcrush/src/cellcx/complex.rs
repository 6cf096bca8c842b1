use super::catalog::{recognize, ShapeId, TET_FACE_CYCLES};
use super::cell::{Cell, Ident};
use crate::tri_core::{Perm4, Triangulation};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Target of a face gluing. Position `k` of the source face's boundary word
/// goes to position `ident.vertex(k)` of the target face.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Glue {
    pub cell: usize,
    pub face: usize,
    pub ident: Ident,
}

/// Lower-dimensional pieces not incident to any 3-cell, and point
/// identifications not induced by face gluings. Extraction clears both.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Debris {
    pub isolated_vertices: usize,
    pub isolated_edges: usize,
    pub isolated_faces: usize,
    /// Pairs of cell corners `(cell, vertex)` identified directly.
    pub vertex_pinches: Vec<[(usize, usize); 2]>,
}

impl Debris {
    pub fn is_empty(&self) -> bool {
        *self == Debris::default()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct CellComplex {
    pub cells: Vec<Cell>,
    pub gluings: Vec<Vec<Option<Glue>>>,
    pub debris: Debris,
}

impl CellComplex {
    pub fn new() -> Self {
        CellComplex::default()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn add_cell(&mut self, cell: Cell) -> usize {
        self.gluings.push(vec![None; cell.faces.len()]);
        self.cells.push(cell);
        self.cells.len() - 1
    }

    pub fn add_shape(&mut self, shape: ShapeId, benign: bool) -> usize {
        let mut cell = shape.canonical().clone();
        cell.benign = benign;
        self.add_cell(cell)
    }

    pub fn glue(&mut self, a: usize, fa: usize, b: usize, fb: usize, offset: usize, reflect: bool) -> Result<()> {
        let check = |c: usize, f: usize| -> Result<usize> {
            self.cells
                .get(c)
                .and_then(|cell| cell.faces.get(f))
                .map(|face| face.len())
                .ok_or_else(|| Error::Structural(format!("no face {f} on cell {c}")))
        };
        let (na, nb) = (check(a, fa)?, check(b, fb)?);
        if na != nb {
            return Err(Error::ArityMismatch(format!("cell {a} face {fa} has arity {na}, cell {b} face {fb} has {nb}")));
        }
        if (a, fa) == (b, fb) {
            return Err(Error::NonInvolutiveGluing(format!("cell {a} face {fa} glued to itself")));
        }
        if self.gluings[a][fa].is_some() || self.gluings[b][fb].is_some() {
            return Err(Error::NonInvolutiveGluing(format!("cell {a} face {fa} or cell {b} face {fb} glued twice")));
        }
        let ident = Ident::new(na, offset, reflect);
        self.gluings[a][fa] = Some(Glue { cell: b, face: fb, ident });
        self.gluings[b][fb] = Some(Glue { cell: a, face: fa, ident: ident.inverse() });
        Ok(())
    }

    pub fn unglue(&mut self, a: usize, fa: usize) {
        if let Some(g) = self.gluings[a][fa].take() {
            self.gluings[g.cell][g.face] = None;
        }
    }

    /// Deletes cell `c`, leaving the faces it was glued to as boundary, and
    /// renumbers the cells after it.
    pub fn remove_cell(&mut self, c: usize) {
        for f in 0..self.gluings[c].len() {
            self.unglue(c, f);
        }
        self.cells.remove(c);
        self.gluings.remove(c);
        for row in self.gluings.iter_mut() {
            for g in row.iter_mut().flatten() {
                if g.cell > c {
                    g.cell -= 1;
                }
            }
        }
        self.debris.vertex_pinches.retain(|p| p[0].0 != c && p[1].0 != c);
        for pinch in self.debris.vertex_pinches.iter_mut() {
            for p in pinch.iter_mut() {
                if p.0 > c {
                    p.0 -= 1;
                }
            }
        }
    }

    /// Number of 2-cells: glued pairs plus boundary faces.
    pub fn two_cell_count(&self) -> usize {
        let faces: usize = self.gluings.iter().map(|r| r.len()).sum();
        let glued = self.gluings.iter().flatten().filter(|g| g.is_some()).count();
        faces - glued / 2
    }

    pub fn validate(&self) -> Result<()> {
        if self.gluings.len() != self.cells.len() {
            return Err(Error::Structural("gluing table does not match cells".into()));
        }
        for (c, cell) in self.cells.iter().enumerate() {
            cell.check().map_err(|e| Error::Structural(format!("cell {c}: {e}")))?;
            if self.gluings[c].len() != cell.faces.len() {
                return Err(Error::Structural(format!("cell {c}: gluing row has wrong length")));
            }
            for (f, g) in self.gluings[c].iter().enumerate() {
                let Some(g) = g else { continue };
                let target = self.cells.get(g.cell).and_then(|x| x.faces.get(g.face));
                let Some(target) = target else {
                    return Err(Error::Structural(format!("cell {c} face {f} glued to a missing face")));
                };
                if target.len() != cell.faces[f].len() || g.ident.n != target.len() {
                    return Err(Error::ArityMismatch(format!("cell {c} face {f}")));
                }
                if (g.cell, g.face) == (c, f) {
                    return Err(Error::NonInvolutiveGluing(format!("cell {c} face {f} glued to itself")));
                }
                let back = self.gluings[g.cell][g.face];
                if back != Some(Glue { cell: c, face: f, ident: g.ident.inverse() }) {
                    return Err(Error::NonInvolutiveGluing(format!("cell {c} face {f}")));
                }
            }
        }
        for pinch in &self.debris.vertex_pinches {
            for &(c, v) in pinch {
                if c >= self.cells.len() || v >= self.cells[c].num_vertices {
                    return Err(Error::Structural(format!("pinch refers to missing vertex {v} of cell {c}")));
                }
            }
        }
        Ok(())
    }

    /// Every face gluing once, as `(cell, face, glue)` with `(cell, face)`
    /// lexicographically smaller than the target.
    pub fn glued_pairs(&self) -> Vec<(usize, usize, Glue)> {
        let mut out = Vec::new();
        for (c, row) in self.gluings.iter().enumerate() {
            for (f, g) in row.iter().enumerate() {
                if let Some(g) = g {
                    if (c, f) < (g.cell, g.face) {
                        out.push((c, f, *g));
                    }
                }
            }
        }
        out
    }

    pub fn boundary_faces(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (c, row) in self.gluings.iter().enumerate() {
            for (f, g) in row.iter().enumerate() {
                if g.is_none() {
                    out.push((c, f));
                }
            }
        }
        out
    }

    /// Replaces cell `c` by `new_cell`, where new face `i` is old face
    /// `face_map[i].0` with new position `j` at old position `face_map[i].1 + j`
    /// and new vertex `v` is old vertex `vertex_map[v]`.
    pub fn relabel_cell(&mut self, c: usize, new_cell: Cell, face_map: &[(usize, usize)], vertex_map: &[usize]) {
        let nf = new_cell.faces.len();
        let mut old_to_new = vec![(usize::MAX, 0); nf];
        for (i, &(old, off)) in face_map.iter().enumerate() {
            old_to_new[old] = (i, off);
        }
        let old_row = std::mem::take(&mut self.gluings[c]);
        let mut new_row = vec![None; nf];
        // Re-point gluings coming into cell c from other cells.
        for (d, row) in self.gluings.iter_mut().enumerate() {
            if d == c {
                continue;
            }
            for g in row.iter_mut().flatten() {
                if g.cell == c {
                    let (nfc, off) = old_to_new[g.face];
                    let n = g.ident.n;
                    g.ident = Ident::new(n, n - off % n, false).compose(&g.ident);
                    g.face = nfc;
                }
            }
        }
        for (i, &(old, off)) in face_map.iter().enumerate() {
            if let Some(g) = old_row[old] {
                let n = g.ident.n;
                let mut ident = g.ident.compose(&Ident::new(n, off, false));
                let mut face = g.face;
                if g.cell == c {
                    let (nfc, off2) = old_to_new[g.face];
                    ident = Ident::new(n, n - off2 % n, false).compose(&ident);
                    face = nfc;
                }
                new_row[i] = Some(Glue { cell: g.cell, face, ident });
            }
        }
        self.gluings[c] = new_row;
        let mut inv = vec![usize::MAX; vertex_map.len()];
        for (v, &old) in vertex_map.iter().enumerate() {
            inv[old] = v;
        }
        for pinch in self.debris.vertex_pinches.iter_mut() {
            for p in pinch.iter_mut() {
                if p.0 == c {
                    p.1 = inv[p.1];
                }
            }
        }
        self.cells[c] = new_cell;
    }

    /// Recognises cell `c` and rewrites it in its shape's canonical labelling.
    pub fn canonicalize_cell(&mut self, c: usize) -> Result<ShapeId> {
        let (shape, iso) =
            recognize(&self.cells[c]).ok_or_else(|| Error::UnknownShape(format!("cell {c} matches no catalog shape")))?;
        let mut cell = shape.canonical().clone();
        cell.benign = self.cells[c].benign;
        self.relabel_cell(c, cell, &iso.faces, &iso.vertices);
        Ok(shape)
    }

    pub fn canonicalize(&mut self) -> Result<()> {
        for c in 0..self.cells.len() {
            self.canonicalize_cell(c)?;
        }
        Ok(())
    }

    /// The complex of CENTRAL_0 cells given by a triangulation.
    pub fn from_triangulation(t: &Triangulation) -> CellComplex {
        let mut cc = CellComplex::new();
        for _ in 0..t.tet_count() {
            cc.add_shape(ShapeId::Tet, false);
        }
        for a in 0..t.tet_count() {
            for i in 0..4 {
                let Some(g) = t.gluing(a, i) else { continue };
                let j = g.perm.apply(i);
                if (a, i) > (g.tet, j) {
                    continue;
                }
                let pos = |x: usize| TET_FACE_CYCLES[j].iter().position(|&y| y == x).unwrap();
                let m0 = pos(g.perm.apply(TET_FACE_CYCLES[i][0]));
                let m1 = pos(g.perm.apply(TET_FACE_CYCLES[i][1]));
                let reflect = (m1 + 1) % 3 == m0;
                cc.glue(a, i, g.tet, j, m0, reflect).expect("triangulation gluings are consistent");
            }
        }
        cc
    }

    /// Reads a complex of tetrahedra as a triangulation.
    pub fn to_triangulation(&self) -> Result<Triangulation> {
        let mut cc = self.clone();
        for c in 0..cc.cells.len() {
            if cc.canonicalize_cell(c)? != ShapeId::Tet {
                return Err(Error::Structural(format!("cell {c} is not a tetrahedron")));
            }
        }
        let mut t = Triangulation::new(cc.cells.len());
        for (a, i, g) in cc.glued_pairs() {
            let j = g.face;
            let mut images = [0u8; 4];
            images[i] = j as u8;
            for k in 0..3 {
                images[TET_FACE_CYCLES[i][k]] = TET_FACE_CYCLES[j][g.ident.vertex(k)] as u8;
            }
            let perm = Perm4::new(images).ok_or_else(|| Error::Structural("face map is not a bijection".into()))?;
            t.glue(a, i, g.cell, perm)?;
        }
        Ok(t)
    }

    pub fn benign_flags(&self) -> Vec<bool> {
        self.cells.iter().map(|c| c.benign).collect()
    }

    /// Drops pieces not incident to a 3-cell and identifications not forced
    /// by face gluings; skeleton classes are then recomputed from gluings.
    pub fn extract(&self) -> CellComplex {
        CellComplex { cells: self.cells.clone(), gluings: self.gluings.clone(), debris: Debris::default() }
    }

    pub fn from_json(text: &str) -> Result<CellComplex> {
        let file: CcFile = serde_json::from_str(text).map_err(|e| Error::Format(format!("cc-v1: {e}")))?;
        if file.format != "cc-v1" {
            return Err(Error::Format(format!("expected format \"cc-v1\", found {:?}", file.format)));
        }
        if file.benign.len() != file.cells.len() {
            return Err(Error::Format(format!(
                "cc-v1: {} cells but {} benign flags",
                file.cells.len(),
                file.benign.len()
            )));
        }
        let shapes = file
            .cells
            .iter()
            .map(|s| ShapeId::from_name(s).ok_or_else(|| Error::UnknownShape(s.clone())))
            .collect::<Result<Vec<_>>>()?;
        build_complex(&shapes, &file.benign, &file.gluings)
    }

    /// Serialises in canonical labelling; every cell must be a catalog shape.
    pub fn to_json(&self) -> Result<String> {
        let mut cc = self.clone();
        let shapes = (0..cc.cells.len()).map(|c| cc.canonicalize_cell(c)).collect::<Result<Vec<_>>>()?;
        let file = CcFile {
            format: "cc-v1".into(),
            cells: shapes.iter().map(|s| s.name().to_string()).collect(),
            benign: cc.benign_flags(),
            gluings: cc
                .glued_pairs()
                .into_iter()
                .map(|(a, fa, g)| (a, fa, g.cell, g.face, g.ident.offset, g.ident.reflect))
                .collect(),
        };
        Ok(serde_json::to_string(&file).expect("cc-v1 serialisation"))
    }
}

type GluingRow = (usize, usize, usize, usize, usize, bool);

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CcFile {
    format: String,
    cells: Vec<String>,
    benign: Vec<bool>,
    gluings: Vec<GluingRow>,
}

/// Builds a complex of canonical catalog cells. Each gluing row is
/// `(cellA, faceA, cellB, faceB, offset, reflect)`; a pair may also be listed
/// from both sides if the two rows agree.
pub fn build_complex(shapes: &[ShapeId], benign: &[bool], gluings: &[GluingRow]) -> Result<CellComplex> {
    if benign.len() != shapes.len() {
        return Err(Error::Structural("benign flags do not match cells".into()));
    }
    let mut cc = CellComplex::new();
    for (&s, &b) in shapes.iter().zip(benign) {
        cc.add_shape(s, b);
    }
    for &(a, fa, b, fb, offset, reflect) in gluings {
        let n = cc
            .cells
            .get(a)
            .and_then(|c| c.faces.get(fa))
            .map(|f| f.len())
            .ok_or_else(|| Error::Structural(format!("no face {fa} on cell {a}")))?;
        if offset >= n {
            return Err(Error::Structural(format!("offset {offset} out of range for arity {n}")));
        }
        let ident = Ident::new(n, offset, reflect);
        if let (Some(Some(g)), true) = (cc.gluings.get(b).and_then(|r| r.get(fb)), cc.gluings[a][fa].is_some()) {
            if (g.cell, g.face) == (a, fa) && g.ident == ident.inverse() {
                continue;
            }
        }
        cc.glue(a, fa, b, fb, offset, reflect)?;
    }
    Ok(cc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_tets() -> Triangulation {
        let mut t = Triangulation::new(2);
        t.glue(0, 3, 1, Perm4::new([1, 0, 2, 3]).unwrap()).unwrap();
        t.glue(0, 0, 1, Perm4::new([2, 3, 0, 1]).unwrap()).unwrap();
        t
    }

    #[test]
    fn triangulation_round_trip() {
        let t = two_tets();
        let cc = CellComplex::from_triangulation(&t);
        cc.validate().unwrap();
        assert_eq!(cc.to_triangulation().unwrap(), t);
    }

    #[test]
    fn relabelled_tet_reads_back() {
        let t = two_tets();
        let mut cc = CellComplex::from_triangulation(&t);
        let (shape, iso) = recognize(&cc.cells[1]).unwrap();
        assert_eq!(shape, ShapeId::Tet);
        // Rotate face words and renumber faces of cell 1 by a symmetry.
        let cell = cc.cells[1].clone();
        let mut faces = cell.faces.clone();
        faces.rotate_left(1);
        for f in faces.iter_mut() {
            f.rotate_left(1);
        }
        let rotated = Cell { faces, marks: cell.marks.clone(), ..cell };
        let map: Vec<(usize, usize)> = (0..4).map(|i| ((i + 1) % 4, 1)).collect();
        cc.relabel_cell(1, rotated, &map, &iso.vertices);
        cc.validate().unwrap();
        assert!(crate::tri_core::are_isomorphic(&cc.to_triangulation().unwrap(), &t).unwrap());
    }

    #[test]
    fn cc_json_round_trip_and_errors() {
        let mut cc = CellComplex::new();
        cc.add_shape(ShapeId::TriPillow, true);
        cc.glue(0, 0, 0, 1, 1, true).unwrap();
        let text = cc.to_json().unwrap();
        assert_eq!(CellComplex::from_json(&text).unwrap(), cc);
        let bad = r#"{"format":"cc-v1","cells":["TET","FOOTBALL3"],"benign":[false,false],"gluings":[[0,0,1,0,0,true]]}"#;
        assert!(matches!(CellComplex::from_json(bad), Err(Error::ArityMismatch(_))));
        let unknown = r#"{"format":"cc-v1","cells":["DODECAHEDRON"],"benign":[false],"gluings":[]}"#;
        assert!(matches!(CellComplex::from_json(unknown), Err(Error::UnknownShape(_))));
        let twice = r#"{"format":"cc-v1","cells":["TET","TET"],"benign":[false,false],"gluings":[[0,0,1,0,0,true],[0,0,1,1,0,true]]}"#;
        assert!(matches!(CellComplex::from_json(twice), Err(Error::NonInvolutiveGluing(_))));
        let extra = r#"{"format":"cc-v1","cells":[],"benign":[],"gluings":[],"x":1}"#;
        assert!(matches!(CellComplex::from_json(extra), Err(Error::Format(_))));
        let alias = r#"{"format":"cc-v1","cells":["CENTRAL_0"],"benign":[false],"gluings":[]}"#;
        assert_eq!(CellComplex::from_json(alias).unwrap().cells[0].shape, Some(ShapeId::Tet));
    }
}
