//! Python bindings: `import pybecurv`.

use becurv::classify::{self, Predicates, Theorem};
use becurv::curvature::{self as curv, Dimension, CD_TOLERANCE};
use becurv::{families, io, Laplacian, Vertex, VertexFunction, WeightedGraph};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: becurv::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn preset(name: &str) -> PyResult<Laplacian> {
    name.parse().map_err(err)
}

/// `None` or `float('inf')` mean `N = ∞`.
fn dimension(n: Option<f64>) -> PyResult<Dimension> {
    match n {
        None => Ok(Dimension::Infinite),
        Some(v) => Dimension::finite(v).map_err(err),
    }
}

/// `(label, value)` pairs of a vertex function.
type Labeled = Vec<(String, f64)>;

#[pyclass(name = "Graph", module = "pybecurv", frozen)]
struct PyGraph {
    inner: WeightedGraph,
}

impl PyGraph {
    fn vertex(&self, label: &str) -> PyResult<Vertex> {
        self.inner.vertex(label).map_err(err)
    }

    fn labeled(&self, f: &VertexFunction) -> Labeled {
        f.iter().map(|(v, x)| (self.inner.label(v).to_string(), x)).collect()
    }
}

#[pymethods]
impl PyGraph {
    /// Parse an edge list or a single graph6 line.
    #[new]
    #[pyo3(signature = (text, laplacian = "non-normalized"))]
    fn new(text: &str, laplacian: &str) -> PyResult<Self> {
        Ok(PyGraph { inner: io::parse_graph(text, preset(laplacian)?).map_err(err)? })
    }

    /// Unweighted graph on vertices "0".."n-1".
    #[staticmethod]
    #[pyo3(signature = (n, edges, laplacian = "non-normalized"))]
    fn from_edges(n: usize, edges: Vec<(usize, usize)>, laplacian: &str) -> PyResult<Self> {
        Ok(PyGraph { inner: WeightedGraph::unweighted(n, &edges, preset(laplacian)?).map_err(err)? })
    }

    fn with_laplacian(&self, laplacian: &str) -> PyResult<Self> {
        Ok(PyGraph { inner: self.inner.with_preset(preset(laplacian)?) })
    }

    #[getter]
    fn laplacian(&self) -> String {
        self.inner.preset().to_string()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn edges(&self) -> Vec<(String, String, f64)> {
        self.inner
            .edges()
            .map(|(u, v, w)| (self.inner.label(u).to_string(), self.inner.label(v).to_string(), w))
            .collect()
    }

    fn degree(&self, vertex: &str) -> PyResult<usize> {
        Ok(self.inner.degree(self.vertex(vertex)?))
    }

    fn to_edge_list(&self) -> String {
        io::to_edge_list(&self.inner)
    }

    fn to_graph6(&self) -> PyResult<String> {
        io::to_graph6(&self.inner).map_err(err)
    }

    fn canonical_form(&self) -> PyResult<String> {
        classify::canonical_form(&self.inner).map_err(err)
    }

    /// `K(G, x; N)`; `n=None` means `N = ∞`.
    #[pyo3(signature = (vertex, n = None))]
    fn curvature(&self, vertex: &str, n: Option<f64>) -> PyResult<f64> {
        Ok(curv::curvature(&self.inner, self.vertex(vertex)?, dimension(n)?).map_err(err)?.k)
    }

    /// `(K, witness)` with the witness as `(label, value)` pairs, or `None` at isolated vertices.
    #[pyo3(signature = (vertex, n = None))]
    fn curvature_with_witness(&self, vertex: &str, n: Option<f64>) -> PyResult<(f64, Option<Labeled>)> {
        let r = curv::curvature(&self.inner, self.vertex(vertex)?, dimension(n)?).map_err(err)?;
        Ok((r.k, r.witness.as_ref().map(|w| self.labeled(w))))
    }

    /// Curvature at every vertex, in label order.
    #[pyo3(signature = (n = None))]
    fn curvature_all(&self, n: Option<f64>) -> PyResult<Vec<(String, f64)>> {
        let results = curv::curvature_all(&self.inner, dimension(n)?).map_err(err)?;
        Ok(results.into_iter().map(|r| (self.inner.label(r.vertex).to_string(), r.k)).collect())
    }

    /// `(holds, min_k, violating_vertex)` for `CD(K, N)`.
    #[pyo3(signature = (k = 0.0, n = None, tol = CD_TOLERANCE))]
    fn check_cd(&self, k: f64, n: Option<f64>, tol: f64) -> PyResult<(bool, f64, Option<String>)> {
        let r = curv::check_cd(&self.inner, k, dimension(n)?, tol).map_err(err)?;
        Ok((r.holds, r.min_k, r.violating_vertex.map(|v| self.inner.label(v).to_string())))
    }

    /// First-sphere-only `CD(0, ∞)` test for unweighted normalized C4-free graphs.
    fn reduced_c4free_check(&self, vertex: &str) -> PyResult<(bool, f64)> {
        let r = curv::reduced_c4free_check(&self.inner, self.vertex(vertex)?).map_err(err)?;
        Ok((r.holds, r.min_eigenvalue))
    }

    /// Girth, or `None` for a forest.
    fn girth(&self) -> Option<usize> {
        self.inner.girth()
    }

    fn girth_at(&self, vertex: &str) -> PyResult<Option<usize>> {
        self.inner.girth_at(self.vertex(vertex)?).map_err(err)
    }

    fn is_c4_free(&self) -> bool {
        self.inner.is_c4_free()
    }

    fn is_triangle_free(&self) -> bool {
        self.inner.is_triangle_free()
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    /// `(r, s)` per component of the punctured two-ball.
    fn punctured_ball_components(&self, vertex: &str) -> PyResult<Vec<(usize, usize)>> {
        let comps = self.inner.punctured_ball_components(self.vertex(vertex)?).map_err(err)?;
        Ok(comps.into_iter().map(|c| (c.r, c.s)).collect())
    }

    fn induced_cycle_lengths(&self, k_min: usize) -> PyResult<Vec<usize>> {
        Ok(self.inner.induced_cycle_lengths(k_min).map_err(err)?.into_iter().collect())
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={}, laplacian={})", self.inner.len(), self.inner.edge_count(), self.inner.preset())
    }
}

/// Named family member: path, cycle, star, complete, hypercube, star3-plus,
/// star3-subdivided, friendship (with a size), paw, petersen (without).
#[pyfunction]
#[pyo3(signature = (family, size = None, laplacian = "non-normalized"))]
fn family(family: &str, size: Option<usize>, laplacian: &str) -> PyResult<PyGraph> {
    let p = preset(laplacian)?;
    let need = || size.ok_or_else(|| PyValueError::new_err(format!("{family} needs a size")));
    let g = match family {
        "path" => families::path(need()?, p),
        "cycle" => families::cycle(need()?, p),
        "star" => families::star(need()?, p),
        "complete" => families::complete(need()?, p),
        "hypercube" => families::hypercube(u32::try_from(need()?).map_err(|_| PyValueError::new_err("hypercube dimension too large"))?, p),
        "star3-plus" => families::star3_plus(need()?, p),
        "star3-subdivided" => families::star3_subdivided(need()?, p),
        "friendship" => families::friendship(need()?, p),
        "paw" => Ok(families::paw(p)),
        "petersen" => Ok(families::petersen(p)),
        other => return Err(PyValueError::new_err(format!("unknown family `{other}`"))),
    };
    Ok(PyGraph { inner: g.map_err(err)? })
}

/// Canonical graph6 strings of connected graphs on `1..=n_max` vertices.
#[pyfunction]
#[pyo3(signature = (n_max, c4_free = false, triangle_free = false, min_degree = 0))]
fn enumerate_graphs(n_max: usize, c4_free: bool, triangle_free: bool, min_degree: usize) -> PyResult<Vec<String>> {
    let pred = Predicates { c4_free, triangle_free, min_degree };
    Ok(classify::enumerate_graphs(n_max, &pred).map_err(err)?.into_iter().map(|g| g.graph6).collect())
}

/// `CD(0, ∞)` scan; returns `(satisfying graph6 strings, enumerated count)`.
#[pyfunction]
#[pyo3(signature = (n_max, laplacian = "non-normalized", c4_free = false, triangle_free = false, min_degree = 0))]
fn scan(
    n_max: usize,
    laplacian: &str,
    c4_free: bool,
    triangle_free: bool,
    min_degree: usize,
) -> PyResult<(Vec<String>, usize)> {
    let pred = Predicates { c4_free, triangle_free, min_degree };
    let r = classify::scan_classification(n_max, preset(laplacian)?, &pred, None).map_err(err)?;
    Ok((r.satisfying, r.enumerated))
}

/// `(matches, missing, unexpected)` for theorem "2.2", "2.4", "2.5" or "2.6".
#[pyfunction]
fn verify_theorem(theorem: &str, n_max: usize) -> PyResult<(bool, Vec<String>, Vec<String>)> {
    let t: Theorem = theorem.parse().map_err(err)?;
    let r = classify::verify_theorem(t, n_max).map_err(err)?;
    Ok((r.matches_expected(), r.missing, r.unexpected))
}

#[pymodule]
fn pybecurv(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(family, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_graphs, m)?)?;
    m.add_function(wrap_pyfunction!(scan, m)?)?;
    m.add_function(wrap_pyfunction!(verify_theorem, m)?)?;
    m.add("CD_TOLERANCE", CD_TOLERANCE)?;
    Ok(())
}
