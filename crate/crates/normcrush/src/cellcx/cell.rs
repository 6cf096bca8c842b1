use super::catalog::ShapeId;
use crate::{Error, Result};
use serde::Serialize;

/// One side of a face: an edge of the cell and whether the face runs along it
/// from its tail to its head.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Side {
    pub edge: usize,
    pub forward: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FaceMark {
    Plain,
    /// Lies inside the surface being cut along.
    Surface,
    /// A quadrilateral meeting the surface in a pair of opposite edges.
    Bridge,
}

/// A 3-cell given by its boundary: a closed oriented surface whose faces run
/// counterclockwise when seen from outside.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cell {
    pub shape: Option<ShapeId>,
    pub benign: bool,
    pub num_vertices: usize,
    /// `edges[e] = [tail, head]`.
    pub edges: Vec<[usize; 2]>,
    pub faces: Vec<Vec<Side>>,
    pub marks: Vec<FaceMark>,
}

impl Cell {
    pub fn arity(&self, f: usize) -> usize {
        self.faces[f].len()
    }

    /// Vertex at position `j` of face `f` (the start of side `j`).
    pub fn corner_vertex(&self, f: usize, j: usize) -> usize {
        let s = self.faces[f][j];
        if s.forward {
            self.edges[s.edge][0]
        } else {
            self.edges[s.edge][1]
        }
    }

    pub fn side_end(&self, f: usize, j: usize) -> usize {
        let s = self.faces[f][j];
        if s.forward {
            self.edges[s.edge][1]
        } else {
            self.edges[s.edge][0]
        }
    }

    pub fn face_vertices(&self, f: usize) -> Vec<usize> {
        (0..self.faces[f].len()).map(|j| self.corner_vertex(f, j)).collect()
    }

    pub fn bigon_faces(&self) -> Vec<usize> {
        (0..self.faces.len()).filter(|&f| self.faces[f].len() == 2).collect()
    }

    /// Checks that faces are closed walks and that every edge is used exactly
    /// twice, once in each direction.
    pub fn check(&self) -> Result<()> {
        if self.marks.len() != self.faces.len() {
            return Err(Error::Structural("face marks do not match faces".into()));
        }
        let mut uses = vec![(0usize, 0usize); self.edges.len()];
        for (e, ends) in self.edges.iter().enumerate() {
            if ends[0] >= self.num_vertices || ends[1] >= self.num_vertices {
                return Err(Error::Structural(format!("edge {e} has an endpoint out of range")));
            }
        }
        let mut seen_vertex = vec![false; self.num_vertices];
        for (f, face) in self.faces.iter().enumerate() {
            if face.len() < 2 {
                return Err(Error::Structural(format!("face {f} has arity {}", face.len())));
            }
            for (j, s) in face.iter().enumerate() {
                if s.edge >= self.edges.len() {
                    return Err(Error::Structural(format!("face {f} side {j}: edge out of range")));
                }
                if self.side_end(f, j) != self.corner_vertex(f, (j + 1) % face.len()) {
                    return Err(Error::Structural(format!("face {f} is not a closed walk at side {j}")));
                }
                seen_vertex[self.corner_vertex(f, j)] = true;
                if s.forward {
                    uses[s.edge].0 += 1;
                } else {
                    uses[s.edge].1 += 1;
                }
            }
        }
        if let Some(e) = uses.iter().position(|&u| u != (1, 1)) {
            return Err(Error::Structural(format!("edge {e} is not used once in each direction")));
        }
        if let Some(v) = seen_vertex.iter().position(|&s| !s) {
            return Err(Error::Structural(format!("vertex {v} lies on no face")));
        }
        Ok(())
    }

    /// V − E + F of the boundary surface.
    pub fn boundary_euler(&self) -> i64 {
        self.num_vertices as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    /// Builds a cell from faces given as vertex cycles, with each side's edge
    /// named explicitly. Edge `e` runs from `ends[e].0` to `ends[e].1`.
    pub fn from_cycles(
        num_vertices: usize,
        ends: &[(usize, usize)],
        faces: &[(&[usize], &[usize])],
        marks: &[FaceMark],
    ) -> Cell {
        let edges: Vec<[usize; 2]> = ends.iter().map(|&(a, b)| [a, b]).collect();
        let faces = faces
            .iter()
            .map(|(verts, es)| {
                (0..verts.len())
                    .map(|j| {
                        let e = es[j];
                        let forward = edges[e] == [verts[j], verts[(j + 1) % verts.len()]];
                        Side { edge: e, forward }
                    })
                    .collect()
            })
            .collect();
        Cell { shape: None, benign: false, num_vertices, edges, faces, marks: marks.to_vec() }
    }
}

/// Affine identification of two cyclic boundary words of length `n`:
/// position `k` goes to `offset + s·k`, where `s = -1` iff `reflect`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ident {
    pub n: usize,
    pub offset: usize,
    pub reflect: bool,
}

impl Ident {
    pub fn new(n: usize, offset: usize, reflect: bool) -> Ident {
        Ident { n, offset: offset % n, reflect }
    }

    pub fn vertex(&self, k: usize) -> usize {
        if self.reflect {
            (self.offset + self.n - k % self.n) % self.n
        } else {
            (self.offset + k) % self.n
        }
    }

    /// Image of side `k`; sides run the other way iff `reflect`.
    pub fn side(&self, k: usize) -> usize {
        if self.reflect {
            (self.offset + 2 * self.n - k % self.n - 1) % self.n
        } else {
            (self.offset + k) % self.n
        }
    }

    pub fn inverse(&self) -> Ident {
        if self.reflect {
            *self
        } else {
            Ident::new(self.n, self.n - self.offset, false)
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Ident) -> Ident {
        debug_assert_eq!(self.n, other.n);
        let offset = self.vertex(other.offset);
        Ident::new(self.n, offset, self.reflect != other.reflect)
    }

    /// The unique identification taking side `k` to side `j`.
    pub fn from_sides(n: usize, k: usize, j: usize, reflect: bool) -> Ident {
        if reflect {
            Ident::new(n, (j + k + 1) % n, true)
        } else {
            Ident::new(n, (j + n - k % n) % n, false)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ident_algebra() {
        for n in 2..7 {
            for o in 0..n {
                for r in [false, true] {
                    let g = Ident::new(n, o, r);
                    let h = g.inverse();
                    for k in 0..n {
                        assert_eq!(h.vertex(g.vertex(k)), k);
                        assert_eq!(h.side(g.side(k)), k);
                        let j = g.side(k);
                        assert_eq!(Ident::from_sides(n, k, j, r), g);
                        // The side image joins the images of its endpoints.
                        let (a, b) = (g.vertex(k), g.vertex(k + 1));
                        if r {
                            assert_eq!((j + 1) % n, a);
                            assert_eq!(j, b);
                        } else {
                            assert_eq!(j, a);
                            assert_eq!((j + 1) % n, b);
                        }
                    }
                    for o2 in 0..n {
                        for r2 in [false, true] {
                            let f = Ident::new(n, o2, r2);
                            let c = g.compose(&f);
                            for k in 0..n {
                                assert_eq!(c.vertex(k), g.vertex(f.vertex(k)));
                                assert_eq!(c.side(k), g.side(f.side(k)));
                            }
                        }
                    }
                }
            }
        }
    }
}
