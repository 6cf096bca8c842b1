//! Generalized triangulations: storage, validation, skeleton computation,
//! vertex/edge classification and isomorphism testing.
//!
//! Face `i` of a tetrahedron is the face opposite vertex `i`. A gluing of face
//! `f` of tetrahedron `t` is a target tetrahedron and a [`Perm4`] acting on
//! vertex labels, with `p(f)` the target face.

mod iso;
mod perm;
mod skeleton;

pub(crate) use skeleton::edge_index;
mod triangulation;

pub use iso::{are_isomorphic, are_isomorphic_with_cap, find_isomorphism, Isomorphism, DEFAULT_ISO_CAP};
pub use perm::Perm4;
pub use skeleton::{
    classify_edges, classify_vertices, compute_skeleton, EdgeClass, EdgeKind, FaceClass, Skeleton,
    VertexClass, VertexKind, VertexLink, VertexReport, EDGE_VERTICES,
};
pub use triangulation::{Gluing, Triangulation};
