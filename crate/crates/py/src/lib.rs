//! Python bindings. Build with `--features extension-module` and load the
//! resulting library as `orbitale`.

use orbitale::canon;
use orbitale::graph::{from_graph6, to_graph6, Graph};
use orbitale::orbital::{enumerate_with, EnumerateOptions, GraphCandidate};
use orbitale::perm::{PermGroup, Permutation};
use orbitale::verify::{run_checks, suite, Recipe, VerifyOptions};
use orbitale::zoo::filter_simple_orders;
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;

create_exception!(orbitale, OrbitaleError, PyException);

fn err(e: orbitale::Error) -> PyErr {
    OrbitaleError::new_err(e.to_string())
}

#[pyclass(name = "Permutation", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyPermutation(Permutation);

#[pymethods]
impl PyPermutation {
    #[new]
    fn new(images: Vec<u32>) -> PyResult<Self> {
        Permutation::from_images(images).map(Self).map_err(err)
    }

    /// From cycle notation such as "(0 1 2)(3 4)".
    #[staticmethod]
    fn from_cycles(degree: usize, text: &str) -> PyResult<Self> {
        Permutation::parse_cycles(degree, text).map(Self).map_err(err)
    }

    #[getter]
    fn images(&self) -> Vec<u32> {
        self.0.images().to_vec()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    /// `self` first, then `other`.
    fn then(&self, other: &PyPermutation) -> PyResult<Self> {
        self.0.compose(&other.0).map(Self).map_err(err)
    }

    fn inverse(&self) -> Self {
        Self(self.0.inverse())
    }

    fn order(&self) -> u64 {
        self.0.order()
    }

    fn __call__(&self, x: u32) -> PyResult<u32> {
        if (x as usize) < self.0.degree() {
            Ok(self.0.image(x))
        } else {
            Err(OrbitaleError::new_err(format!("point {x} out of range")))
        }
    }

    fn __repr__(&self) -> String {
        self.0.to_cycle_string()
    }
}

#[pyclass(name = "PermGroup", frozen)]
struct PyPermGroup(PermGroup);

#[pymethods]
impl PyPermGroup {
    #[new]
    fn new(degree: usize, generators: Vec<Vec<u32>>) -> PyResult<Self> {
        let gens = generators
            .into_iter()
            .map(Permutation::from_images)
            .collect::<orbitale::Result<Vec<_>>>()
            .map_err(err)?;
        PermGroup::new(degree, gens).map(Self).map_err(err)
    }

    /// A named group: "psl2:25", "pgl2xz2:11", "j1", "a5xd10", ...
    #[staticmethod]
    fn named(recipe: &str) -> PyResult<Self> {
        let r: Recipe = recipe.parse().map_err(err)?;
        r.build().map(Self).map_err(err)
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    fn order(&self) -> u128 {
        self.0.order()
    }

    fn generators(&self) -> Vec<PyPermutation> {
        self.0.generators().iter().cloned().map(PyPermutation).collect()
    }

    fn contains(&self, p: &PyPermutation) -> PyResult<bool> {
        self.0.contains(&p.0).map_err(err)
    }

    fn orbit(&self, point: usize) -> PyResult<Vec<u32>> {
        self.0.orbit(point).map_err(err)
    }

    fn is_transitive(&self) -> bool {
        self.0.is_transitive()
    }

    fn __repr__(&self) -> String {
        format!("PermGroup(degree={}, order={})", self.0.degree(), self.0.order())
    }
}

#[pyclass(name = "Graph", frozen)]
struct PyGraph(Graph);

#[pymethods]
impl PyGraph {
    #[new]
    fn new(n: usize, edges: Vec<(u32, u32)>) -> PyResult<Self> {
        Graph::from_edges(n, &edges).map(Self).map_err(err)
    }

    #[staticmethod]
    fn from_graph6(text: &str) -> PyResult<Self> {
        from_graph6(text.trim().as_bytes()).map(Self).map_err(err)
    }

    fn graph6(&self) -> String {
        String::from_utf8(to_graph6(&self.0)).expect("graph6 is ASCII")
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.0.vertex_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.0.edge_count()
    }

    fn neighbors(&self, v: u32) -> PyResult<Vec<u32>> {
        if (v as usize) < self.0.vertex_count() {
            Ok(self.0.neighbors(v).to_vec())
        } else {
            Err(OrbitaleError::new_err(format!("vertex {v} out of range")))
        }
    }

    fn edges(&self) -> Vec<(u32, u32)> {
        self.0.edges().collect()
    }

    fn is_connected(&self) -> bool {
        self.0.is_connected()
    }

    fn is_bipartite(&self) -> bool {
        self.0.is_bipartite()
    }

    /// graph6 of the canonical form.
    fn canonical_form(&self) -> PyResult<String> {
        let f = canon::canonical_form(&self.0).map_err(err)?;
        Ok(String::from_utf8(f.bytes()).expect("graph6 is ASCII"))
    }

    fn automorphism_group_order(&self) -> PyResult<u128> {
        Ok(canon::automorphism_group(&self.0).map_err(err)?.order())
    }

    fn is_isomorphic(&self, other: &PyGraph) -> PyResult<bool> {
        canon::are_isomorphic(&self.0, &other.0).map_err(err)
    }
}

#[pyclass(name = "Candidate", frozen)]
struct PyCandidate(GraphCandidate);

#[pymethods]
impl PyCandidate {
    #[getter]
    fn graph(&self) -> PyGraph {
        PyGraph(self.0.graph.clone())
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree
    }

    #[getter]
    fn stabilizer_kind(&self) -> String {
        self.0.stabilizer_kind.to_string()
    }

    #[getter]
    fn s(&self) -> usize {
        self.0.transitivity.s
    }

    /// None when the canonical search ran out of budget.
    #[getter]
    fn aut_order(&self) -> Option<u128> {
        self.0.aut_order
    }

    fn graph6(&self) -> String {
        String::from_utf8(self.0.graph6()).expect("graph6 is ASCII")
    }

    fn __repr__(&self) -> String {
        format!(
            "Candidate(degree={}, stabilizer={}, s={}, aut_order={})",
            self.0.degree,
            self.0.stabilizer_kind,
            self.0.transitivity.s,
            self.0.aut_order.map_or("unknown".to_string(), |a| a.to_string())
        )
    }
}

/// Pairwise non-isomorphic pentavalent arc-transitive graphs of `group`.
#[pyfunction]
#[pyo3(signature = (group, stab_orders, seed = 0, budget = None))]
fn enumerate(py: Python<'_>, group: &PyPermGroup, stab_orders: Vec<u128>, seed: u64, budget: Option<u64>) -> PyResult<Vec<PyCandidate>> {
    let opts = EnumerateOptions {
        group_label: "G".into(),
        seed,
        canon_budget: budget,
    };
    let g = &group.0;
    let found = py.detach(|| enumerate_with(g, &stab_orders, &opts)).map_err(err)?;
    Ok(found.into_iter().map(PyCandidate).collect())
}

/// Runs a named suite and returns the JSON report.
#[pyfunction]
#[pyo3(signature = (name, seed = 0, budget = None))]
fn verify(py: Python<'_>, name: &str, seed: u64, budget: Option<u64>) -> PyResult<String> {
    let checks = suite(name).map_err(err)?;
    let opts = VerifyOptions {
        seed,
        canon_budget: budget,
    };
    let reports = py.detach(|| run_checks(&checks, &opts, |_| {})).map_err(err)?;
    serde_json::to_string(&reports).map_err(|e| OrbitaleError::new_err(e.to_string()))
}

/// (name, order) of simple groups of order 2^i 3^j 5 n.
#[pyfunction]
fn simple_orders(n: u64) -> PyResult<Vec<(String, u128)>> {
    Ok(filter_simple_orders(n)
        .map_err(err)?
        .into_iter()
        .map(|r| (r.name, r.order))
        .collect())
}

#[pymodule]
#[pyo3(name = "orbitale")]
fn orbitale_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("OrbitaleError", m.py().get_type::<OrbitaleError>())?;
    m.add_class::<PyPermutation>()?;
    m.add_class::<PyPermGroup>()?;
    m.add_class::<PyGraph>()?;
    m.add_class::<PyCandidate>()?;
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(simple_orders, m)?)?;
    Ok(())
}
