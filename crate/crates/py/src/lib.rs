//! Python bindings for the temporal connectivity library.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;
use tcd::hardness::{assignment_to_labelling, build_gadget, Assignment};
use tcd::random::RouterReport;
use tcd::removal::ExactConfig;
use tcd::{Label, Vertex};

fn err(e: tcd::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

type Step = (Vertex, Vertex, Label);
type ForemostOutput = (Vec<Option<Label>>, Vec<Option<Vec<Step>>>);

#[pyclass(name = "TemporalGraph", module = "tcdesign", eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyGraph {
    inner: tcd::TemporalGraph,
}

impl From<tcd::TemporalGraph> for PyGraph {
    fn from(inner: tcd::TemporalGraph) -> Self {
        PyGraph { inner }
    }
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, directed = false))]
    fn new(n: usize, directed: bool) -> Self {
        tcd::TemporalGraph::new(n, directed).into()
    }

    /// Parses the text graph format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        tcd::format::parse_graph(text).map(Into::into).map_err(err)
    }

    fn to_text(&self) -> String {
        tcd::format::write_graph(&self.inner)
    }

    fn add_label(&mut self, u: Vertex, v: Vertex, label: Label) -> PyResult<()> {
        self.inner.add_label(u, v, label).map_err(err)
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    #[getter]
    fn cost(&self) -> usize {
        self.inner.cost()
    }

    #[getter]
    fn directed(&self) -> bool {
        self.inner.is_directed()
    }

    /// `(u, v, labels)` for every edge.
    fn edges(&self) -> Vec<(Vertex, Vertex, Vec<Label>)> {
        self.inner
            .edges()
            .map(|(e, ls)| (e.u, e.v, ls.as_slice().to_vec()))
            .collect()
    }

    fn is_slse(&self) -> bool {
        self.inner.is_slse()
    }

    fn is_temporally_connected(&self) -> bool {
        tcd::is_temporally_connected(&self.inner)
    }

    #[pyo3(signature = (limit = 10))]
    fn tc_failures(&self, limit: usize) -> Vec<(Vertex, Vertex)> {
        tcd::reachability::tc_failures(&self.inner, limit)
    }

    /// Foremost arrival times and journeys from `source`; `None` marks an
    /// unreachable vertex.
    #[pyo3(signature = (source, start_time = 0))]
    fn foremost(&self, source: Vertex, start_time: Label) -> PyResult<ForemostOutput> {
        let res = tcd::foremost(&self.inner, source, start_time).map_err(err)?;
        let journeys = (0..self.inner.vertex_count())
            .map(|v| {
                res.reconstruct(v)
                    .map(|j| j.map(|j| j.steps.iter().map(|t| (t.from, t.to, t.label)).collect()))
            })
            .collect::<tcd::Result<_>>()
            .map_err(err)?;
        Ok((res.arrival, journeys))
    }

    fn __repr__(&self) -> String {
        format!(
            "TemporalGraph(n={}, edges={}, cost={}, directed={})",
            self.inner.vertex_count(),
            self.inner.edge_count(),
            self.inner.cost(),
            self.inner.is_directed()
        )
    }
}

/// SLSE hypercube labelling of dimension `k`.
#[pyfunction]
fn hypercube(k: u32) -> PyResult<PyGraph> {
    tcd::design::hypercube_design(k)
        .map(|d| d.labelling.into())
        .map_err(err)
}

/// Spanning-tree labelling of cost `2(n-1)` rooted at `root`.
#[pyfunction]
#[pyo3(signature = (g, root = 0))]
fn tree_design(g: &PyGraph, root: Vertex) -> PyResult<PyGraph> {
    tcd::design::spanning_tree_labelling(&g.inner, root)
        .map(|d| d.labelling.into())
        .map_err(err)
}

#[pyfunction]
fn reduce_clique(g: &PyGraph) -> PyResult<PyGraph> {
    tcd::design::clique_slse_reduce(&g.inner)
        .map(Into::into)
        .map_err(err)
}

/// Greedy removal: `(profit, residual)`.
#[pyfunction]
fn greedy_removal(g: &PyGraph, seed: u64) -> PyResult<(usize, PyGraph)> {
    let r = tcd::removal::greedy_removal(&g.inner, seed).map_err(err)?;
    Ok((r.profit, r.residual.into()))
}

/// Exact removal profit: `(profit, exact, residual)`.
#[pyfunction]
#[pyo3(signature = (g, seed = 0, label_cap = 22, node_budget = 20_000_000))]
fn exact_removal(
    g: &PyGraph,
    seed: u64,
    label_cap: usize,
    node_budget: u64,
) -> PyResult<(usize, bool, PyGraph)> {
    let config = ExactConfig {
        label_cap,
        node_budget,
        seed,
    };
    let r = tcd::removal::removal_profit_exact(&g.inner, config).map_err(err)?;
    Ok((r.profit, r.exact, r.residual.into()))
}

/// Gadget labelling for a formula in `p mxor3` text form.
#[pyfunction]
fn gadget(formula: &str) -> PyResult<PyGraph> {
    let phi = tcd::format::parse_formula(formula).map_err(err)?;
    Ok(build_gadget(&phi).graph.into())
}

/// Sub-labelling of the gadget for an assignment:
/// `(satisfied_clauses, removed_labels, labelling)`.
#[pyfunction]
fn assign(formula: &str, values: Vec<bool>) -> PyResult<(usize, usize, PyGraph)> {
    let phi = tcd::format::parse_formula(formula).map_err(err)?;
    let tau = Assignment::new(&phi, values).map_err(err)?;
    let g = build_gadget(&phi);
    let l = assignment_to_labelling(&g, &tau).map_err(err)?;
    Ok((tau.satisfied, g.graph.cost() - l.cost(), l.into()))
}

fn report_dict<'py>(py: Python<'py>, r: &RouterReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("n", r.n)?;
    d.set_item("p", r.p)?;
    d.set_item("alpha", r.alpha)?;
    d.set_item("gamma", r.gamma)?;
    d.set_item("seed", r.seed)?;
    d.set_item("original_label_count", r.original_label_count)?;
    d.set_item("kept_label_count", r.kept_label_count)?;
    d.set_item("tc_verdict", r.tc_verdict)?;
    d.set_item("router_vertices", r.router_vertices)?;
    d.set_item("special_paths", r.special_paths)?;
    d.set_item("theta_count", r.theta_count)?;
    d.set_item("unattached", r.unattached)?;
    Ok(d)
}

/// Clique-router sparsification trials, one dict per trial.
#[pyfunction]
fn clique_trials<'py>(
    py: Python<'py>,
    n: usize,
    alpha: Label,
    gamma: f64,
    trials: usize,
    seed: u64,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let reports = py
        .detach(|| tcd::random::clique_trials(n, alpha, gamma, trials, seed))
        .map_err(err)?;
    reports.iter().map(|r| report_dict(py, r)).collect()
}

/// G(n,p) theta-router sparsification trials, one dict per trial.
#[pyfunction]
fn gnp_trials<'py>(
    py: Python<'py>,
    n: usize,
    p: f64,
    alpha: Label,
    trials: usize,
    seed: u64,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let reports = py
        .detach(|| tcd::random::gnp_trials(n, p, alpha, trials, seed))
        .map_err(err)?;
    reports.iter().map(|r| report_dict(py, r)).collect()
}

#[pymodule]
fn tcdesign(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(hypercube, m)?)?;
    m.add_function(wrap_pyfunction!(tree_design, m)?)?;
    m.add_function(wrap_pyfunction!(reduce_clique, m)?)?;
    m.add_function(wrap_pyfunction!(greedy_removal, m)?)?;
    m.add_function(wrap_pyfunction!(exact_removal, m)?)?;
    m.add_function(wrap_pyfunction!(gadget, m)?)?;
    m.add_function(wrap_pyfunction!(assign, m)?)?;
    m.add_function(wrap_pyfunction!(clique_trials, m)?)?;
    m.add_function(wrap_pyfunction!(gnp_trials, m)?)?;
    Ok(())
}
