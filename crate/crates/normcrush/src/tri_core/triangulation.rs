use super::perm::Perm4;
use crate::uf::{ParityUnionFind, UnionFind};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Destination of one face gluing: the target tetrahedron and the vertex map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Gluing {
    pub tet: usize,
    pub perm: Perm4,
}

/// Tetrahedra plus face gluings. The skeleton is always derived, never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Triangulation {
    gluings: Vec<[Option<Gluing>; 4]>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TriFile {
    format: String,
    tets: usize,
    gluings: Vec<Vec<Option<(usize, Perm4)>>>,
}

impl Triangulation {
    /// `n` tetrahedra with every face on the boundary.
    pub fn new(n: usize) -> Self {
        Triangulation { gluings: vec![[None; 4]; n] }
    }

    /// Builds from a raw gluing table and validates it.
    pub fn from_table(gluings: Vec<[Option<Gluing>; 4]>) -> Result<Self> {
        let t = Triangulation { gluings };
        t.validate()?;
        Ok(t)
    }

    pub fn table(&self) -> &[[Option<Gluing>; 4]] {
        &self.gluings
    }

    pub fn tet_count(&self) -> usize {
        self.gluings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gluings.is_empty()
    }

    pub fn gluing(&self, tet: usize, face: usize) -> Option<Gluing> {
        self.gluings[tet][face]
    }

    pub fn add_tet(&mut self) -> usize {
        self.gluings.push([None; 4]);
        self.gluings.len() - 1
    }

    /// Glues face `face` of `tet` to face `perm(face)` of `target`, both directions.
    pub fn glue(&mut self, tet: usize, face: usize, target: usize, perm: Perm4) -> Result<()> {
        let tf = perm.apply(face);
        if tet == target && tf == face {
            return Err(Error::Structural(format!("face {face} of tetrahedron {tet} glued to itself")));
        }
        if self.gluings[tet][face].is_some() || self.gluings[target][tf].is_some() {
            return Err(Error::Structural(format!(
                "face {face} of tetrahedron {tet} or face {tf} of tetrahedron {target} already glued"
            )));
        }
        self.gluings[tet][face] = Some(Gluing { tet: target, perm });
        self.gluings[target][tf] = Some(Gluing { tet, perm: perm.inverse() });
        Ok(())
    }

    pub fn unglue(&mut self, tet: usize, face: usize) {
        if let Some(g) = self.gluings[tet][face].take() {
            self.gluings[g.tet][g.perm.apply(face)] = None;
        }
    }

    /// Checks involutivity, no self-gluing and index ranges.
    pub fn validate(&self) -> Result<()> {
        let n = self.gluings.len();
        for (t, faces) in self.gluings.iter().enumerate() {
            for (f, g) in faces.iter().enumerate() {
                let Some(g) = g else { continue };
                if g.tet >= n {
                    return Err(Error::Structural(format!(
                        "tetrahedron {t} face {f}: target tetrahedron {} out of range",
                        g.tet
                    )));
                }
                let tf = g.perm.apply(f);
                if g.tet == t && tf == f {
                    return Err(Error::Structural(format!("tetrahedron {t} face {f} glued to itself")));
                }
                match self.gluings[g.tet][tf] {
                    Some(back) if back.tet == t && back.perm == g.perm.inverse() => {}
                    _ => {
                        return Err(Error::NonInvolutiveGluing(format!(
                            "tetrahedron {t} face {f} -> tetrahedron {} face {tf} is not reciprocated",
                            g.tet
                        )))
                    }
                }
            }
        }
        Ok(())
    }

    pub fn boundary_faces(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (t, faces) in self.gluings.iter().enumerate() {
            for (f, g) in faces.iter().enumerate() {
                if g.is_none() {
                    out.push((t, f));
                }
            }
        }
        out
    }

    pub fn has_boundary_faces(&self) -> bool {
        self.gluings.iter().any(|f| f.iter().any(|g| g.is_none()))
    }

    /// Connected component id per tetrahedron, numbered by lowest tetrahedron.
    pub fn component_ids(&self) -> (Vec<usize>, usize) {
        let mut uf = UnionFind::new(self.gluings.len());
        for (t, faces) in self.gluings.iter().enumerate() {
            for g in faces.iter().flatten() {
                uf.union(t, g.tet);
            }
        }
        uf.classes()
    }

    /// The connected components as separate triangulations, in order.
    pub fn components(&self) -> Vec<(Vec<usize>, Triangulation)> {
        let (ids, count) = self.component_ids();
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); count];
        for (t, &c) in ids.iter().enumerate() {
            members[c].push(t);
        }
        members
            .into_iter()
            .map(|tets| {
                let sub = self.subset(&tets);
                (tets, sub)
            })
            .collect()
    }

    /// Restriction to a union of components, renumbered in the given order.
    pub fn subset(&self, tets: &[usize]) -> Triangulation {
        let mut index = vec![usize::MAX; self.gluings.len()];
        for (i, &t) in tets.iter().enumerate() {
            index[t] = i;
        }
        let gluings = tets
            .iter()
            .map(|&t| {
                let mut row = [None; 4];
                for f in 0..4 {
                    if let Some(g) = self.gluings[t][f] {
                        if index[g.tet] != usize::MAX {
                            row[f] = Some(Gluing { tet: index[g.tet], perm: g.perm });
                        }
                    }
                }
                row
            })
            .collect();
        Triangulation { gluings }
    }

    pub fn disjoint_union(&self, other: &Triangulation) -> Triangulation {
        let off = self.gluings.len();
        let mut gluings = self.gluings.clone();
        for row in &other.gluings {
            let mut r = *row;
            for g in r.iter_mut().flatten() {
                g.tet += off;
            }
            gluings.push(r);
        }
        Triangulation { gluings }
    }

    /// Renumbers tetrahedra by `tet_map` and relabels vertices of tetrahedron
    /// `t` by `vertex_maps[t]` (old label -> new label).
    pub fn relabel(&self, tet_map: &[usize], vertex_maps: &[Perm4]) -> Triangulation {
        let n = self.gluings.len();
        let mut gluings = vec![[None; 4]; n];
        for t in 0..n {
            let rho = vertex_maps[t];
            for f in 0..4 {
                if let Some(g) = self.gluings[t][f] {
                    let perm = vertex_maps[g.tet].compose(&g.perm).compose(&rho.inverse());
                    gluings[tet_map[t]][rho.apply(f)] = Some(Gluing { tet: tet_map[g.tet], perm });
                }
            }
        }
        Triangulation { gluings }
    }

    /// Orientability of the underlying pseudomanifold (per whole triangulation).
    pub fn is_orientable(&self) -> bool {
        let mut uf = ParityUnionFind::new(self.gluings.len());
        let mut ok = true;
        for (t, faces) in self.gluings.iter().enumerate() {
            for g in faces.iter().flatten() {
                // Odd gluing permutations are the orientation-compatible ones.
                ok &= uf.union(t, g.tet, g.perm.is_even());
            }
        }
        ok
    }

    pub fn from_json(text: &str) -> Result<Triangulation> {
        let file: TriFile = serde_json::from_str(text).map_err(|e| Error::Format(format!("tri-v1: {e}")))?;
        if file.format != "tri-v1" {
            return Err(Error::Format(format!("expected format \"tri-v1\", found {:?}", file.format)));
        }
        if file.gluings.len() != file.tets {
            return Err(Error::Format(format!(
                "tri-v1: \"tets\" is {} but {} gluing rows given",
                file.tets,
                file.gluings.len()
            )));
        }
        let mut gluings = Vec::with_capacity(file.tets);
        for (t, row) in file.gluings.iter().enumerate() {
            if row.len() != 4 {
                return Err(Error::Format(format!("tri-v1: tetrahedron {t} has {} face entries, expected 4", row.len())));
            }
            let mut r = [None; 4];
            for (f, entry) in row.iter().enumerate() {
                r[f] = entry.map(|(tet, perm)| Gluing { tet, perm });
            }
            gluings.push(r);
        }
        Triangulation::from_table(gluings)
    }

    pub fn to_json(&self) -> String {
        let file = TriFile {
            format: "tri-v1".to_string(),
            tets: self.gluings.len(),
            gluings: self
                .gluings
                .iter()
                .map(|row| row.iter().map(|g| g.map(|g| (g.tet, g.perm))).collect())
                .collect(),
        };
        serde_json::to_string(&file).expect("tri-v1 serialisation")
    }
}
