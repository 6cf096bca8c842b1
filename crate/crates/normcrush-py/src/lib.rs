//! Python bindings for normcrush.
//!
//! Reports come back as plain Python objects (dicts and lists), built from the
//! same JSON the CLI prints.

use normcrush::analysis::{homology_h1, sphere_certificate};
use normcrush::cellcx::{classify_complex, CellComplex, ShapeId};
use normcrush::crush::{crush_pipeline, CrushOptions, CrushResult, Selector};
use normcrush::normal::{check_admissible, enumerate_bounded, surface_invariants, NormalVector, DEFAULT_WORK_CAP};
use normcrush::tri_core::{are_isomorphic, classify_vertices, compute_skeleton, Perm4, Triangulation};
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

create_exception!(normcrush, NormcrushError, PyException);

fn err(e: normcrush::Error) -> PyErr {
    NormcrushError::new_err((e.kind(), e.to_string()))
}

fn to_py<'py, T: Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

#[pyclass(name = "Triangulation", module = "normcrush", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyTriangulation {
    inner: Triangulation,
}

#[pymethods]
impl PyTriangulation {
    /// `n` unglued tetrahedra.
    #[new]
    #[pyo3(signature = (n = 0))]
    fn new(n: usize) -> Self {
        PyTriangulation { inner: Triangulation::new(n) }
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyTriangulation { inner: Triangulation::from_json(text).map_err(err)? })
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| PyValueError::new_err(format!("{path}: {e}")))?;
        Self::from_json(&text)
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    /// A copy with face `face` of `tet` glued to `target` by the vertex map `perm`.
    fn glued(&self, tet: usize, face: usize, target: usize, perm: [u8; 4]) -> PyResult<Self> {
        let p = Perm4::new(perm).ok_or_else(|| PyValueError::new_err(format!("not a permutation: {perm:?}")))?;
        let mut t = self.inner.clone();
        t.glue(tet, face, target, p).map_err(err)?;
        Ok(PyTriangulation { inner: t })
    }

    fn __len__(&self) -> usize {
        self.inner.tet_count()
    }

    #[getter]
    fn tet_count(&self) -> usize {
        self.inner.tet_count()
    }

    fn is_orientable(&self) -> bool {
        self.inner.is_orientable()
    }

    fn boundary_faces(&self) -> Vec<(usize, usize)> {
        self.inner.boundary_faces()
    }

    fn components(&self) -> Vec<PyTriangulation> {
        self.inner.components().into_iter().map(|(_, t)| PyTriangulation { inner: t }).collect()
    }

    fn skeleton<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &compute_skeleton(&self.inner).map_err(err)?)
    }

    fn vertex_links<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &classify_vertices(&self.inner).map_err(err)?)
    }

    /// Component classes of the triangulation viewed as a cell complex.
    fn classify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &classify_complex(&CellComplex::from_triangulation(&self.inner)))
    }

    /// First homology as `{"betti": b, "torsion": [...]}`.
    fn homology<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &homology_h1(&self.inner).map_err(err)?)
    }

    fn sphere_certificate<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &sphere_certificate(&self.inner))
    }

    fn is_isomorphic(&self, other: &PyTriangulation) -> PyResult<bool> {
        are_isomorphic(&self.inner, &other.inner).map_err(err)
    }

    fn __eq__(&self, other: &PyTriangulation) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Triangulation({} tetrahedra)", self.inner.tet_count())
    }
}

#[pyclass(name = "NormalVector", module = "normcrush", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyNormalVector {
    inner: NormalVector,
}

#[pymethods]
impl PyNormalVector {
    /// Seven coordinates per tetrahedron: four triangles, then three quads.
    #[new]
    fn new(coords: Vec<u64>) -> PyResult<Self> {
        if coords.len() % 7 != 0 {
            return Err(PyValueError::new_err(format!("{} coordinates is not a multiple of 7", coords.len())));
        }
        Ok(PyNormalVector { inner: NormalVector::new(coords) })
    }

    #[staticmethod]
    fn zero(tets: usize) -> Self {
        PyNormalVector { inner: NormalVector::zero(tets) }
    }

    #[staticmethod]
    fn vertex_links(tets: usize) -> Self {
        PyNormalVector { inner: NormalVector::vertex_links(tets) }
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyNormalVector { inner: NormalVector::from_json(text).map_err(err)? })
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| PyValueError::new_err(format!("{path}: {e}")))?;
        Self::from_json(&text)
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn coords(&self) -> Vec<u64> {
        self.inner.coords.clone()
    }

    fn is_trivial(&self) -> bool {
        self.inner.is_trivial()
    }

    fn check<'py>(&self, py: Python<'py>, t: &PyTriangulation) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &check_admissible(&t.inner, &self.inner).map_err(err)?)
    }

    fn invariants<'py>(&self, py: Python<'py>, t: &PyTriangulation) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &surface_invariants(&t.inner, &self.inner).map_err(err)?)
    }

    fn __add__(&self, other: &PyNormalVector) -> PyResult<Self> {
        if self.inner.tets() != other.inner.tets() {
            return Err(PyValueError::new_err("vectors have different lengths"));
        }
        Ok(PyNormalVector { inner: self.inner.add(&other.inner) })
    }

    fn __eq__(&self, other: &PyNormalVector) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("NormalVector({:?})", self.inner.coords)
    }
}

#[pyclass(name = "CellComplex", module = "normcrush", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyCellComplex {
    inner: CellComplex,
}

#[pymethods]
impl PyCellComplex {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyCellComplex { inner: CellComplex::from_json(text).map_err(err)? })
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| PyValueError::new_err(format!("{path}: {e}")))?;
        Self::from_json(&text)
    }

    #[staticmethod]
    fn from_triangulation(t: &PyTriangulation) -> Self {
        PyCellComplex { inner: CellComplex::from_triangulation(&t.inner) }
    }

    /// A complex of one unglued cell of the named shape.
    #[staticmethod]
    #[pyo3(signature = (name, benign = false))]
    fn lone(name: &str, benign: bool) -> PyResult<Self> {
        let shape = ShapeId::from_name(name).ok_or_else(|| PyValueError::new_err(format!("unknown shape {name}")))?;
        let mut c = CellComplex::new();
        c.add_shape(shape, benign);
        Ok(PyCellComplex { inner: c })
    }

    fn to_json(&self) -> PyResult<String> {
        self.inner.to_json().map_err(err)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn shapes(&self) -> Vec<Option<&'static str>> {
        self.inner.cells.iter().map(|c| c.shape.map(|s| s.name())).collect()
    }

    fn classify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &classify_complex(&self.inner))
    }

    fn to_triangulation(&self) -> PyResult<PyTriangulation> {
        Ok(PyTriangulation { inner: self.inner.to_triangulation().map_err(err)? })
    }

    /// Flattens every non-tetrahedral cell; returns the triangulation and the move trace.
    fn flatten(&self) -> PyResult<(PyTriangulation, String)> {
        let f = normcrush::crush::flatten_all(&self.inner).map_err(err)?;
        Ok((PyTriangulation { inner: f.triangulation }, f.trace.to_json()))
    }
}

#[pyclass(name = "CrushResult", module = "normcrush", frozen, skip_from_py_object)]
pub struct PyCrushResult {
    inner: CrushResult,
}

#[pymethods]
impl PyCrushResult {
    #[getter]
    fn output(&self) -> PyTriangulation {
        PyTriangulation { inner: self.inner.output.clone() }
    }

    #[getter]
    fn components(&self) -> Vec<PyTriangulation> {
        self.inner.components.iter().map(|t| PyTriangulation { inner: t.clone() }).collect()
    }

    #[getter]
    fn benign_component_ids(&self) -> Vec<usize> {
        self.inner.benign_component_ids.clone()
    }

    #[getter]
    fn region(&self) -> Option<usize> {
        self.inner.region
    }

    #[getter]
    fn moves(&self) -> usize {
        self.inner.trace.moves.len()
    }

    #[getter]
    fn move_bound(&self) -> usize {
        self.inner.move_bound
    }

    fn diagnostics<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.inner.diagnostics)
    }

    fn bad_candidates<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.inner.bad_candidates)
    }

    fn trace_json(&self) -> String {
        self.inner.trace.to_json()
    }

    fn __repr__(&self) -> String {
        format!(
            "CrushResult({} -> {} tetrahedra, {} moves)",
            self.inner.input_tetrahedra,
            self.inner.output.tet_count(),
            self.inner.trace.moves.len()
        )
    }
}

/// All admissible vectors with every coordinate at most `max_coord`.
#[pyfunction]
#[pyo3(signature = (t, max_coord, work_cap = DEFAULT_WORK_CAP))]
fn enumerate(t: &PyTriangulation, max_coord: u64, work_cap: u64) -> PyResult<Vec<PyNormalVector>> {
    let vs = enumerate_bounded(&t.inner, max_coord, work_cap).map_err(err)?;
    Ok(vs.into_iter().map(|inner| PyNormalVector { inner }).collect())
}

/// Cuts `t` along `v`, crushes and flattens. `region` is an index, `"auto"` or None.
#[pyfunction]
#[pyo3(signature = (t, v, region = None, assume_theorem1 = false))]
fn crush(
    py: Python<'_>,
    t: &PyTriangulation,
    v: &PyNormalVector,
    region: Option<Bound<'_, PyAny>>,
    assume_theorem1: bool,
) -> PyResult<PyCrushResult> {
    let region = match region {
        None => None,
        Some(r) => {
            let text = if let Ok(i) = r.extract::<usize>() { i.to_string() } else { r.extract::<String>()? };
            Some(text.parse::<Selector>().map_err(err)?)
        }
    };
    let opts = CrushOptions { region, assume_theorem1 };
    let (t, v) = (t.inner.clone(), v.inner.clone());
    let inner = py.detach(move || crush_pipeline(&t, &v, opts)).map_err(err)?;
    Ok(PyCrushResult { inner })
}

/// Runs the command line tool in-process; returns `(exit_code, stdout, stderr)`.
#[pyfunction]
fn run_cli(args: Vec<String>) -> (i32, String, String) {
    let r = normcrush::cli::run(std::iter::once("normcrush".to_string()).chain(args));
    (r.code, r.stdout, r.stderr)
}

#[pymodule]
#[pyo3(name = "normcrush")]
fn normcrush_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTriangulation>()?;
    m.add_class::<PyNormalVector>()?;
    m.add_class::<PyCellComplex>()?;
    m.add_class::<PyCrushResult>()?;
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(crush, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    m.add("NormcrushError", m.py().get_type::<NormcrushError>())?;
    Ok(())
}
