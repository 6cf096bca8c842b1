use super::complex::CellComplex;
use super::skeleton::cc_skeleton;
use crate::tri_core::{VertexKind, VertexLink};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComponentClass {
    Closed,
    Bounded,
    Ideal,
    InvalidBearing,
    Mixed,
}

impl ComponentClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            ComponentClass::Closed => "closed",
            ComponentClass::Bounded => "bounded",
            ComponentClass::Ideal => "ideal",
            ComponentClass::InvalidBearing => "invalid-bearing",
            ComponentClass::Mixed => "mixed",
        }
    }

    pub fn from_parts(kinds: &[VertexKind], invalid_edges: usize) -> ComponentClass {
        let has = |k: VertexKind| kinds.contains(&k);
        if invalid_edges > 0 || has(VertexKind::Invalid) {
            ComponentClass::InvalidBearing
        } else if kinds.iter().all(|&k| k == VertexKind::Internal) {
            ComponentClass::Closed
        } else if has(VertexKind::Boundary) && !has(VertexKind::Ideal) {
            ComponentClass::Bounded
        } else if has(VertexKind::Ideal) && !has(VertexKind::Boundary) {
            ComponentClass::Ideal
        } else {
            ComponentClass::Mixed
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentSummary {
    pub cells: Vec<usize>,
    pub benign: bool,
    pub class: ComponentClass,
    pub vertices: Vec<VertexLink>,
    pub edge_count: usize,
    pub invalid_edges: usize,
    pub boundary_edges: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub components: Vec<ComponentSummary>,
}

/// Splits the complex into connected components (numbered by lowest cell)
/// and classifies each from its vertex links and edge validity.
pub fn classify_complex(c: &CellComplex) -> ComponentReport {
    let sk = cc_skeleton(c);
    let mut comps: Vec<ComponentSummary> = (0..sk.component_count)
        .map(|_| ComponentSummary {
            cells: Vec::new(),
            benign: false,
            class: ComponentClass::Closed,
            vertices: Vec::new(),
            edge_count: 0,
            invalid_edges: 0,
            boundary_edges: 0,
        })
        .collect();
    for (ci, &k) in sk.component_of.iter().enumerate() {
        comps[k].cells.push(ci);
        comps[k].benign |= c.cells[ci].benign;
    }
    for (v, members) in sk.vertices.iter().enumerate() {
        comps[sk.component_of[members[0].0]].vertices.push(sk.links[v].clone());
    }
    for e in &sk.edges {
        let comp = &mut comps[sk.component_of[e.members[0].0]];
        comp.edge_count += 1;
        comp.invalid_edges += usize::from(!e.valid);
        comp.boundary_edges += usize::from(e.boundary);
    }
    for comp in comps.iter_mut() {
        let kinds: Vec<VertexKind> = comp.vertices.iter().map(|l| l.kind).collect();
        comp.class = ComponentClass::from_parts(&kinds, comp.invalid_edges);
    }
    ComponentReport { components: comps }
}
