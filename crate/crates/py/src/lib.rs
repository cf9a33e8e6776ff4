//! Python bindings. Vertex ids are 1-based on the Python side; rationals
//! cross the boundary as `fractions.Fraction`.

use std::str::FromStr;

use num_rational::BigRational;
use perturbcc_core::generate::{gen_chain_union as chain_union, gen_random_graph as random_graph, Labeling};
use perturbcc_core::traversal::{algebraic_bfs_component, gss_component, sis_component};
use perturbcc_core::{detlab, exact, oracle, DriverOptions, Error, Graph, MatrixParams, Strategy};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Accepts an int, a `Fraction`, or a string such as `"3/2"`.
fn rational(obj: &Bound<'_, PyAny>) -> PyResult<BigRational> {
    let text = obj.str()?.to_string();
    BigRational::from_str(text.trim()).map_err(|_| PyValueError::new_err(format!("not a rational number: {text}")))
}

fn fraction<'py>(py: Python<'py>, r: &BigRational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((r.to_string(),))
}

fn fractions<'py>(py: Python<'py>, values: &[BigRational]) -> PyResult<Vec<Bound<'py, PyAny>>> {
    values.iter().map(|v| fraction(py, v)).collect()
}

fn one_based(vs: &[usize]) -> Vec<usize> {
    vs.iter().map(|v| v + 1).collect()
}

fn vertex(g: &Graph, v: usize) -> PyResult<usize> {
    if v == 0 || v > g.vertex_count() {
        return Err(PyValueError::new_err(format!(
            "vertex {v} out of range 1..={}",
            g.vertex_count()
        )));
    }
    Ok(v - 1)
}

fn params(g: &Graph, d: Option<&Bound<'_, PyAny>>, epsilon: Option<&Bound<'_, PyAny>>) -> PyResult<MatrixParams> {
    let mut p = match d {
        Some(d) => MatrixParams::with_d(g, rational(d)?).map_err(err)?,
        None => MatrixParams::for_graph(g),
    };
    if let Some(e) = epsilon {
        p = p.with_epsilon(rational(e)?).map_err(err)?;
    }
    Ok(p)
}

/// An undirected simple graph. Loops and duplicate edges are dropped.
#[pyclass(name = "Graph", module = "perturbcc", frozen)]
struct PyGraph {
    inner: Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, edges = Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(PyGraph {
            inner: Graph::from_one_based(n, edges).map_err(err)?,
        })
    }

    /// Parses the `n N` / `u v` edge-list format.
    #[staticmethod]
    fn from_edge_list(text: &str) -> PyResult<Self> {
        Ok(PyGraph {
            inner: perturbcc_core::load_edge_list(text).map_err(err)?.graph,
        })
    }

    fn to_edge_list(&self) -> String {
        perturbcc_core::write_edge_list(&self.inner)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.vertex_count()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.edge_count()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().iter().map(|&(a, b)| (a + 1, b + 1)).collect()
    }

    fn neighbors(&self, v: usize) -> PyResult<Vec<usize>> {
        let v = vertex(&self.inner, v)?;
        Ok(one_based(self.inner.neighbors(v)))
    }

    fn max_degree(&self) -> usize {
        self.inner.max_degree()
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.inner.vertex_count(), self.inner.edge_count())
    }
}

#[pyfunction]
fn load_edge_list(path: &str) -> PyResult<PyGraph> {
    let text = std::fs::read_to_string(path).map_err(|e| PyValueError::new_err(format!("{path}: {e}")))?;
    PyGraph::from_edge_list(&text)
}

/// `chains` disjoint paths of `length` vertices; shuffled ids when `seed` is given.
#[pyfunction]
#[pyo3(signature = (chains, length, seed = None))]
fn gen_chain_union(chains: usize, length: usize, seed: Option<u64>) -> PyResult<PyGraph> {
    let labeling = seed.map_or(Labeling::Identity, Labeling::Shuffled);
    Ok(PyGraph {
        inner: chain_union(chains, length, labeling).map_err(err)?,
    })
}

#[pyfunction]
#[pyo3(signature = (n, m, seed = 1))]
fn gen_random_graph(n: usize, m: u64, seed: u64) -> PyResult<PyGraph> {
    Ok(PyGraph {
        inner: random_graph(n, m, seed).map_err(err)?,
    })
}

/// All components with one strategy: `{"components", "K", "iterations"}`.
#[pyfunction]
#[pyo3(signature = (g, algo = "gss", start = None))]
fn components<'py>(py: Python<'py>, g: &PyGraph, algo: &str, start: Option<usize>) -> PyResult<Bound<'py, PyDict>> {
    let strategy = Strategy::from_str(algo).map_err(err)?;
    let first_start = start.map(|s| vertex(&g.inner, s)).transpose()?;
    let opts = DriverOptions {
        first_start,
        ..DriverOptions::default()
    };
    let run = perturbcc_core::components_via(&g.inner, strategy, &opts).map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("components", run.partition.one_based())?;
    out.set_item("K", run.partition.count())?;
    out.set_item("iterations", run.total_iterations())?;
    Ok(out)
}

/// One component with its per-iteration newly reached sets.
#[pyfunction]
#[pyo3(signature = (g, start, algo = "gss"))]
fn component_trace<'py>(py: Python<'py>, g: &PyGraph, start: usize, algo: &str) -> PyResult<Bound<'py, PyDict>> {
    let s = vertex(&g.inner, start)?;
    let (component, trace) = match Strategy::from_str(algo).map_err(err)? {
        Strategy::AlgebraicBfs => algebraic_bfs_component(&g.inner, s),
        Strategy::Sis => sis_component(&g.inner, s),
        Strategy::Gss => gss_component(&g.inner, s),
        Strategy::ExactPerturb => return Err(PyValueError::new_err("the exact strategy has no trace")),
    }
    .map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("component", one_based(&component))?;
    out.set_item("iterations", trace.iterations_used)?;
    out.set_item(
        "newly_reached",
        trace.newly_reached.iter().map(|s| one_based(s)).collect::<Vec<_>>(),
    )?;
    Ok(out)
}

#[pyfunction]
fn uf_components(g: &PyGraph) -> Vec<Vec<usize>> {
    oracle::uf_components(&g.inner).one_based()
}

#[pyfunction]
fn bfs_levels(g: &PyGraph, start: usize) -> PyResult<Vec<Vec<usize>>> {
    let s = vertex(&g.inner, start)?;
    Ok(oracle::bfs_levels(&g.inner, s).levels.iter().map(|l| one_based(l)).collect())
}

#[pyfunction]
fn eccentricity(g: &PyGraph, v: usize) -> PyResult<usize> {
    Ok(oracle::eccentricity(&g.inner, vertex(&g.inner, v)?))
}

#[pyfunction]
fn diameter(g: &PyGraph) -> usize {
    oracle::diameter(&g.inner)
}

/// Exact perturbation test from vertex `i`: `{"component", "x", "x_perturbed"}`
/// with exact `Fraction` entries.
#[pyfunction]
#[pyo3(signature = (g, i, d = None, epsilon = None))]
fn perturb_component<'py>(
    py: Python<'py>,
    g: &PyGraph,
    i: usize,
    d: Option<&Bound<'py, PyAny>>,
    epsilon: Option<&Bound<'py, PyAny>>,
) -> PyResult<Bound<'py, PyDict>> {
    let p = params(&g.inner, d, epsilon)?;
    let out = exact::perturb_component(&g.inner, &p, vertex(&g.inner, i)?).map_err(err)?;
    let dict = PyDict::new(py);
    dict.set_item("component", one_based(&out.component))?;
    dict.set_item("x", fractions(py, &out.x.0)?)?;
    dict.set_item("x_perturbed", fractions(py, &out.x_perturbed.0)?)?;
    dict.set_item("d", fraction(py, &p.d)?)?;
    Ok(dict)
}

/// Exact solution of `(A0 + dI) x = e_rhs`.
#[pyfunction]
#[pyo3(signature = (g, rhs, d = None))]
fn solve_exact<'py>(py: Python<'py>, g: &PyGraph, rhs: usize, d: Option<&Bound<'py, PyAny>>) -> PyResult<Vec<Bound<'py, PyAny>>> {
    let p = params(&g.inner, d, None)?;
    let x = exact::solve_exact(&g.inner, &p, vertex(&g.inner, rhs)?).map_err(err)?;
    fractions(py, &x.0)
}

/// Coefficients `c_0..c_n` of `det(A0 + dI) = sum c_l d^(n-l)`.
#[pyfunction]
fn det_polynomial(g: &PyGraph) -> PyResult<Vec<i64>> {
    Ok(detlab::det_polynomial(&g.inner).map_err(err)?.coeffs)
}

/// `det A_ij` (row i and column j removed), exact.
#[pyfunction]
#[pyo3(signature = (g, i, j, d = None))]
fn minor_det<'py>(py: Python<'py>, g: &PyGraph, i: usize, j: usize, d: Option<&Bound<'py, PyAny>>) -> PyResult<Bound<'py, PyAny>> {
    let p = params(&g.inner, d, None)?;
    let m = detlab::minor_det(&g.inner, &p, vertex(&g.inner, i)?, vertex(&g.inner, j)?).map_err(err)?;
    fraction(py, &m)
}

#[pyfunction]
fn delta_bound<'py>(py: Python<'py>, n: usize, d: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &exact::delta_bound(n, &rational(d)?).map_err(err)?)
}

/// Sweeps needed for decision accuracy; `mu` and `d` omitted means the
/// `mu = d_max` setting, `4n + 1`.
#[pyfunction]
#[pyo3(signature = (n, mu = None, d = None))]
fn required_iterations(n: usize, mu: Option<&Bound<'_, PyAny>>, d: Option<&Bound<'_, PyAny>>) -> PyResult<u64> {
    match (mu, d) {
        (None, None) => Ok(exact::required_iterations_dmax_mode(n)),
        (Some(mu), Some(d)) => exact::required_iterations(n, &rational(mu)?, &rational(d)?).map_err(err),
        _ => Err(PyValueError::new_err("give both mu and d, or neither")),
    }
}

#[pyfunction]
fn required_mantissa(n: usize, d: &Bound<'_, PyAny>) -> PyResult<u64> {
    exact::required_mantissa(n, &rational(d)?).map_err(err)
}

#[pymodule(name = "perturbcc")]
fn perturbcc_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(load_edge_list, m)?)?;
    m.add_function(wrap_pyfunction!(gen_chain_union, m)?)?;
    m.add_function(wrap_pyfunction!(gen_random_graph, m)?)?;
    m.add_function(wrap_pyfunction!(components, m)?)?;
    m.add_function(wrap_pyfunction!(component_trace, m)?)?;
    m.add_function(wrap_pyfunction!(uf_components, m)?)?;
    m.add_function(wrap_pyfunction!(bfs_levels, m)?)?;
    m.add_function(wrap_pyfunction!(eccentricity, m)?)?;
    m.add_function(wrap_pyfunction!(diameter, m)?)?;
    m.add_function(wrap_pyfunction!(perturb_component, m)?)?;
    m.add_function(wrap_pyfunction!(solve_exact, m)?)?;
    m.add_function(wrap_pyfunction!(det_polynomial, m)?)?;
    m.add_function(wrap_pyfunction!(minor_det, m)?)?;
    m.add_function(wrap_pyfunction!(delta_bound, m)?)?;
    m.add_function(wrap_pyfunction!(required_iterations, m)?)?;
    m.add_function(wrap_pyfunction!(required_mantissa, m)?)?;
    Ok(())
}
