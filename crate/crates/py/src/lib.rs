//! Python bindings. Move scripts cross the boundary as lists of `.moves`
//! lines such as `"S 0 1 2"`, bijections as lists where `psi[v]` is the image
//! of `v`.

use edgeslide::format::{parse_elist, parse_moves, write_elist};
use edgeslide::{CheckLevel, Error, Graph, MoveScript, VertexBijection};
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

create_exception!(
    pyedgeslide,
    MoveRejectedError,
    PyValueError,
    "A script move failed its precondition or a replay check."
);

fn to_py(err: Error) -> PyErr {
    match err {
        Error::Rejected(r) => MoveRejectedError::new_err(r.to_string()),
        Error::Invariant(msg) => PyRuntimeError::new_err(msg),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn lines(s: &MoveScript) -> Vec<String> {
    s.iter().map(|m| m.to_string()).collect()
}

fn script(moves: Vec<String>) -> PyResult<MoveScript> {
    parse_moves(&moves.join("\n")).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn bijection(psi: Option<Vec<usize>>, n: usize) -> PyResult<VertexBijection> {
    match psi {
        None => Ok(VertexBijection::identity(n)),
        Some(v) => VertexBijection::new(v).map_err(|e| PyValueError::new_err(e.to_string())),
    }
}

/// Simple undirected graph on vertices `0..n`.
#[pyclass(name = "Graph", module = "pyedgeslide", frozen, eq)]
#[derive(PartialEq)]
struct PyGraph {
    inner: Graph,
}

impl From<Graph> for PyGraph {
    fn from(inner: Graph) -> Self {
        Self { inner }
    }
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, edges=Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Graph::from_edges(n, edges)
            .map(Self::from)
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    #[staticmethod]
    fn from_elist(text: &str) -> PyResult<Self> {
        parse_elist(text)
            .map(Self::from)
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    #[staticmethod]
    fn path(n: usize) -> Self {
        Graph::path(n).into()
    }

    #[staticmethod]
    fn cycle(n: usize) -> Self {
        Graph::cycle(n).into()
    }

    #[staticmethod]
    fn complete(n: usize) -> Self {
        Graph::complete(n).into()
    }

    #[staticmethod]
    fn star(n: usize) -> Self {
        Graph::star(n).into()
    }

    fn to_elist(&self) -> String {
        write_elist(&self.inner)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.key()
    }

    fn degrees(&self) -> Vec<usize> {
        self.inner.degrees()
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        self.inner.has_edge(u, v)
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    fn euler_characteristic(&self) -> i64 {
        self.inner.euler_characteristic()
    }

    fn energy(&self) -> u64 {
        self.inner.energy()
    }

    fn stats<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let s = self.inner.stats();
        let d = PyDict::new(py);
        d.set_item("n", s.n)?;
        d.set_item("e", s.e)?;
        d.set_item("chi", s.chi)?;
        d.set_item("energy", s.energy)?;
        d.set_item("degrees", s.degrees)?;
        d.set_item("curvature_sum", s.curvature_sum)?;
        Ok(d)
    }

    /// Replays `moves`, with connectivity and Euler checks after each when `full`.
    #[pyo3(signature = (moves, full=true))]
    fn replay(&self, moves: Vec<String>, full: bool) -> PyResult<Self> {
        let level = if full {
            CheckLevel::Full
        } else {
            CheckLevel::Fast
        };
        edgeslide::replay(&self.inner, &script(moves)?, level)
            .map(Self::from)
            .map_err(|e| to_py(e.into()))
    }

    /// True iff `psi` carries this graph's edges exactly onto `other`'s.
    #[pyo3(signature = (other, psi=None))]
    fn is_isomorphic_under(&self, other: &PyGraph, psi: Option<Vec<usize>>) -> PyResult<bool> {
        let psi = bijection(psi, self.inner.n())?;
        self.inner
            .is_isomorphic_under(&other.inner, &psi)
            .map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, edges={:?})", self.inner.n(), self.inner.key())
    }

    fn __str__(&self) -> String {
        self.inner.stats().to_string()
    }
}

/// Slides turning `gamma` into `sigma`; the result maps onto `sigma` under `psi`.
#[pyfunction]
#[pyo3(signature = (gamma, sigma, psi=None))]
fn transform(gamma: &PyGraph, sigma: &PyGraph, psi: Option<Vec<usize>>) -> PyResult<Vec<String>> {
    let psi = bijection(psi, sigma.inner.n())?;
    let plan = edgeslide::transform(&gamma.inner, &sigma.inner, &psi).map_err(to_py)?;
    Ok(lines(&plan.script))
}

#[pyfunction]
fn regularize(g: &PyGraph) -> PyResult<Vec<String>> {
    let r = edgeslide::regularize(&g.inner).map_err(to_py)?;
    Ok(lines(&r.script))
}

#[pyfunction]
fn move_edge(g: &PyGraph, uv: (usize, usize), xy: (usize, usize)) -> PyResult<Vec<String>> {
    edgeslide::move_edge(&g.inner, uv, xy)
        .map(|s| lines(&s))
        .map_err(to_py)
}

#[pyfunction]
fn interchange(g: &PyGraph, a: usize, b: usize) -> PyResult<Vec<String>> {
    edgeslide::interchange(&g.inner, a, b)
        .map(|s| lines(&s))
        .map_err(to_py)
}

/// Returns the script and the bijection from the final graph onto `sigma`.
#[pyfunction]
fn transform_euler(gamma: &PyGraph, sigma: &PyGraph) -> PyResult<(Vec<String>, Vec<usize>)> {
    let (s, psi) = edgeslide::transform_euler(&gamma.inner, &sigma.inner).map_err(to_py)?;
    Ok((lines(&s), psi.as_slice().to_vec()))
}

#[pyfunction]
fn enumerate_connected(n: usize, e: usize) -> PyResult<Vec<PyGraph>> {
    let gs = edgeslide::enumerate_connected(n, e).map_err(to_py)?;
    Ok(gs.into_iter().map(PyGraph::from).collect())
}

#[pyfunction]
fn slide_neighbors(g: &PyGraph) -> Vec<PyGraph> {
    edgeslide::slide_neighbors(&g.inner)
        .into_iter()
        .map(PyGraph::from)
        .collect()
}

#[pyfunction]
fn census<'py>(py: Python<'py>, n: usize, e: usize) -> PyResult<Bound<'py, PyDict>> {
    let r = edgeslide::reachability_census(n, e).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("n", r.n)?;
    d.set_item("e", r.e)?;
    d.set_item("members", r.members)?;
    d.set_item("classes", r.classes)?;
    d.set_item("diameter", r.diameter)?;
    Ok(d)
}

/// Degree multiset, non-increasing, of an almost-regular graph with `(n, e)`.
#[pyfunction]
fn almost_regular_target(n: usize, e: usize) -> PyResult<Vec<usize>> {
    edgeslide::almost_regular_target(n, e)
        .map(|t| t.multiset())
        .map_err(to_py)
}

#[pyfunction]
fn minimal_energy_oracle(n: usize, e: usize) -> PyResult<Vec<Vec<usize>>> {
    edgeslide::minimal_energy_oracle(n, e)
        .map(|s| s.into_iter().collect())
        .map_err(to_py)
}

#[pymodule]
fn pyedgeslide(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add("MoveRejectedError", m.py().get_type::<MoveRejectedError>())?;
    m.add_function(wrap_pyfunction!(transform, m)?)?;
    m.add_function(wrap_pyfunction!(regularize, m)?)?;
    m.add_function(wrap_pyfunction!(move_edge, m)?)?;
    m.add_function(wrap_pyfunction!(interchange, m)?)?;
    m.add_function(wrap_pyfunction!(transform_euler, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_connected, m)?)?;
    m.add_function(wrap_pyfunction!(slide_neighbors, m)?)?;
    m.add_function(wrap_pyfunction!(census, m)?)?;
    m.add_function(wrap_pyfunction!(almost_regular_target, m)?)?;
    m.add_function(wrap_pyfunction!(minimal_energy_oracle, m)?)?;
    Ok(())
}
