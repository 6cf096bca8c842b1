use super::cut::cut_along;
use super::flatten::{flatten_all, MoveTrace};
use super::ndcrush::nondestructive_crush;
use super::region::{choose_region, Selector};
use crate::analysis::{enumerate_bigon_paths, homology_h1, sphere_certificate, BigonPath, Certificate, HomologyGroup};
use crate::cellcx::{classify_complex, CellComplex, ComponentClass};
use crate::normal::NormalVector;
use crate::tri_core::Triangulation;
use crate::{Error, Result};
use serde::Serialize;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CrushOptions {
    /// Region to mark benign; `None` crushes without a chosen region.
    pub region: Option<Selector>,
    /// Check the output against the contract for a maximal surface in a
    /// suitable region. Implies `auto` when no region is given.
    pub assume_theorem1: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentDiagnostics {
    /// Tetrahedra of the output triangulation in this component.
    pub tetrahedra: Vec<usize>,
    pub benign: bool,
    pub class: ComponentClass,
    pub invalid_edges: usize,
    /// `None` when the component has invalid edges.
    pub h1: Option<HomologyGroup>,
    pub sphere_certificate: Certificate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrushResult {
    pub input_tetrahedra: usize,
    pub output: Triangulation,
    /// The output split into components, in order of lowest tetrahedron.
    pub components: Vec<Triangulation>,
    pub diagnostics: Vec<ComponentDiagnostics>,
    pub benign_component_ids: Vec<usize>,
    pub region: Option<usize>,
    /// Bigon paths in the crushed complex that may be boundary parallel annuli.
    pub bad_candidates: Vec<BigonPath>,
    /// Number of cells in the non-destructively crushed complex.
    pub crushed_cells: usize,
    pub move_bound: usize,
    pub trace: MoveTrace,
}

/// The non-destructively crushed complex of `v`, with the region chosen by
/// `region` marked benign.
pub fn crushed_complex(t: &Triangulation, v: &NormalVector, region: Option<Selector>) -> Result<(CellComplex, Option<usize>)> {
    let mut cut = cut_along(t, v)?;
    if let Some(sel) = region {
        cut = choose_region(&cut, sel)?;
    }
    Ok((nondestructive_crush(&cut)?, cut.region_index))
}

pub fn crush_pipeline(t: &Triangulation, v: &NormalVector, opts: CrushOptions) -> Result<CrushResult> {
    let region = match (opts.region, opts.assume_theorem1) {
        (None, true) => Some(Selector::Auto),
        (r, _) => r,
    };
    let (crushed, region_index) = crushed_complex(t, v, region)?;
    let bad_candidates: Vec<BigonPath> = enumerate_bigon_paths(&crushed).into_iter().filter(|p| p.bad_candidate).collect();
    let flat = flatten_all(&crushed)?;
    let output = flat.triangulation;
    let mut components = Vec::new();
    let mut diagnostics = Vec::new();
    for (tets, sub) in output.components() {
        let benign = flat.benign[tets[0]];
        if tets.iter().any(|&x| flat.benign[x] != benign) {
            return Err(Error::PropertyViolation(format!("output component at tetrahedron {} mixes benign marks", tets[0])));
        }
        let report = classify_complex(&CellComplex::from_triangulation(&sub));
        let summary = &report.components[0];
        let h1 = if summary.invalid_edges == 0 { Some(homology_h1(&sub)?) } else { None };
        diagnostics.push(ComponentDiagnostics {
            tetrahedra: tets,
            benign,
            class: summary.class,
            invalid_edges: summary.invalid_edges,
            h1,
            sphere_certificate: sphere_certificate(&sub),
        });
        components.push(sub);
    }
    let benign_component_ids = diagnostics.iter().enumerate().filter(|(_, d)| d.benign).map(|(i, _)| i).collect();
    let result = CrushResult {
        input_tetrahedra: t.tet_count(),
        output,
        components,
        diagnostics,
        benign_component_ids,
        region: region_index,
        bad_candidates,
        crushed_cells: crushed.len(),
        move_bound: flat.move_bound,
        trace: flat.trace,
    };
    if opts.assume_theorem1 {
        check_theorem1(&result)?;
    }
    Ok(result)
}

/// Exactly one benign component is ideal, the other benign components and
/// every closed non-benign component pass the sphere certificate.
pub fn check_theorem1(r: &CrushResult) -> Result<()> {
    let ideal: Vec<usize> = r.benign_component_ids.iter().copied().filter(|&i| r.diagnostics[i].class == ComponentClass::Ideal).collect();
    if ideal.len() != 1 {
        return Err(Error::PropertyViolation(format!(
            "expected exactly one ideal benign component, found {} among {} benign components",
            ideal.len(),
            r.benign_component_ids.len()
        )));
    }
    for (i, d) in r.diagnostics.iter().enumerate() {
        let constrained = if d.benign { i != ideal[0] } else { d.class == ComponentClass::Closed };
        if constrained {
            if let Certificate::Fail { reason } = &d.sphere_certificate {
                let which = if d.benign { "benign" } else { "non-benign" };
                return Err(Error::PropertyViolation(format!("{which} component {i} fails the sphere certificate: {reason}")));
            }
        }
    }
    Ok(())
}
