use super::homology::homology_h1;
use crate::tri_core::{classify_vertices, compute_skeleton, Triangulation, VertexKind};
use serde::Serialize;

/// Outcome of the 3-sphere necessary-condition filter. A pass is not a
/// recognition of the 3-sphere.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Certificate {
    Pass,
    Fail { reason: String },
}

impl Certificate {
    pub fn passed(&self) -> bool {
        *self == Certificate::Pass
    }
}

/// V - E + F - T of the quotient cell complex.
pub fn euler_characteristic(t: &Triangulation) -> crate::Result<i64> {
    let sk = compute_skeleton(t)?;
    Ok(sk.vertices.len() as i64 - sk.edges.len() as i64 + sk.faces.len() as i64 - t.tet_count() as i64)
}

/// Passes iff `t` is one closed, orientable component whose vertex links are
/// all 2-spheres and whose first homology is trivial.
pub fn sphere_certificate(t: &Triangulation) -> Certificate {
    let fail = |reason: String| Certificate::Fail { reason };
    if t.is_empty() {
        return fail("empty triangulation".into());
    }
    if t.component_ids().1 != 1 {
        return fail(format!("{} components", t.component_ids().1));
    }
    let sk = match compute_skeleton(t) {
        Ok(sk) => sk,
        Err(e) => return fail(e.to_string()),
    };
    if let Some(e) = sk.edges.iter().position(|e| !e.valid) {
        return fail(format!("invalid edge {e}"));
    }
    let links = match classify_vertices(t) {
        Ok(r) => r.vertices,
        Err(e) => return fail(e.to_string()),
    };
    if let Some((v, l)) = links.iter().enumerate().find(|(_, l)| l.kind != VertexKind::Internal) {
        return fail(format!("{} vertex {v}", l.kind.as_str()));
    }
    if !t.is_orientable() {
        return fail("non-orientable".into());
    }
    match homology_h1(t) {
        Ok(h) if h.is_trivial() => Certificate::Pass,
        Ok(h) => fail(format!("H1 = {h}")),
        Err(e) => fail(e.to_string()),
    }
}
