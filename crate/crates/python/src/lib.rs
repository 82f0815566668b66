//! Python module `brim`: instances, exact search, solver batches and raw
//! machine trajectories.

use brim_core::config::{Readout, SolverConfig, SolverKind};
use brim_core::dynamics::{self, integrate, AnnealSchedule, BrimConfig, ZivParams, ZivShape};
use brim_core::graph::{self, Graph, SpinVector, WeightModel};
use brim_core::harness::{run_batch, BatchOptions, Instance};
use brim_core::Error;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn to_py(e: Error) -> PyErr {
    if e.is_simulation_fault() {
        PyRuntimeError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn spins_of(v: Vec<i8>) -> PyResult<SpinVector> {
    SpinVector::new(v).map_err(to_py)
}

/// Weighted undirected graph; edges are `(i, j, w)` with 0-based vertices.
#[pyclass(name = "Graph", module = "brim", frozen)]
struct PyGraph {
    inner: Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize, f64)>) -> PyResult<Self> {
        Ok(PyGraph { inner: Graph::new(n, edges).map_err(to_py)? })
    }

    #[staticmethod]
    fn from_gset(text: &str) -> PyResult<Self> {
        Ok(PyGraph { inner: graph::parse_gset(text).map_err(to_py)? })
    }

    fn to_gset(&self) -> String {
        graph::serialize_gset(&self.inner)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize, f64)> {
        self.inner.edges().iter().map(|e| (e.i, e.j, e.w)).collect()
    }

    fn total_weight(&self) -> f64 {
        self.inner.total_weight()
    }

    fn cut_value(&self, spins: Vec<i8>) -> PyResult<f64> {
        graph::cut_value(&self.inner, &spins_of(spins)?).map_err(to_py)
    }

    /// Ising energy with `J = −W`.
    fn ising_energy(&self, spins: Vec<i8>) -> PyResult<f64> {
        graph::ising_energy(&graph::maxcut_to_ising(&self.inner), &spins_of(spins)?).map_err(to_py)
    }

    #[pyo3(signature = (cap = graph::DEFAULT_BRUTE_FORCE_CAP))]
    fn brute_force_maxcut(&self, py: Python<'_>, cap: usize) -> PyResult<(f64, Vec<i8>)> {
        let g = &self.inner;
        let (cut, s) = py.detach(|| graph::brute_force_maxcut_with_cap(g, cap)).map_err(to_py)?;
        Ok((cut, s.into_vec()))
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, edges={})", self.inner.n(), self.inner.edge_count())
    }
}

/// Random instance; `weights` is `unit`, `pm1`, `int:LO:HI` or `real:LO:HI`.
#[pyfunction]
#[pyo3(signature = (n, density, weights = "pm1", seed = 0))]
fn gen_random_graph(n: usize, density: f64, weights: &str, seed: u64) -> PyResult<PyGraph> {
    let model: WeightModel = weights.parse().map_err(to_py)?;
    Ok(PyGraph { inner: graph::gen_random_graph(n, density, model, seed).map_err(to_py)? })
}

/// One seeded solver run.
#[pyclass(name = "RunReport", module = "brim", frozen, get_all)]
struct PyRunReport {
    solver: String,
    seed: u64,
    budget: f64,
    cut: f64,
    energy: f64,
    best_seen_energy: f64,
    spins: Vec<i8>,
}

#[pymethods]
impl PyRunReport {
    fn __repr__(&self) -> String {
        format!("RunReport(solver={}, seed={}, cut={}, energy={})", self.solver, self.seed, self.cut, self.energy)
    }
}

fn solver_config(solver: &str, config: Option<&str>, budget: Option<f64>) -> PyResult<SolverConfig> {
    let kind: SolverKind = solver.parse().map_err(to_py)?;
    let cfg = match config {
        Some(text) => SolverConfig::parse(text, Some(kind)).map_err(to_py)?,
        None => SolverConfig::default_for(kind),
    };
    match budget {
        Some(b) => cfg.with_budget(b).map_err(to_py),
        None => Ok(cfg),
    }
}

/// Runs `runs` seeded solves; `config` is the text of a `key = value` file.
#[pyfunction]
#[pyo3(signature = (graph, solver = "brim", runs = 1, seed = 0, budget = None, config = None, workers = None))]
fn solve(
    py: Python<'_>,
    graph: &PyGraph,
    solver: &str,
    runs: usize,
    seed: u64,
    budget: Option<f64>,
    config: Option<&str>,
    workers: Option<usize>,
) -> PyResult<Vec<PyRunReport>> {
    let cfg = solver_config(solver, config, budget)?;
    let inst = Instance::new("python", graph.inner.clone());
    let opts = BatchOptions { runs, seed_base: seed, workers, timing: false };
    let batch = py.detach(|| run_batch(&cfg, &inst, &opts, None)).map_err(to_py)?;
    Ok(batch
        .reports
        .into_iter()
        .map(|r| PyRunReport {
            solver: r.solver.to_string(),
            seed: r.seed,
            budget: r.budget,
            cut: r.cut,
            energy: r.energy,
            best_seen_energy: r.best_seen_energy,
            spins: r.spins.into_vec(),
        })
        .collect())
}

/// Result of integrating the machine once.
#[pyclass(name = "Trajectory", module = "brim", frozen, get_all)]
struct PyTrajectory {
    t_end: f64,
    final_voltages: Vec<f64>,
    spins: Vec<i8>,
    best_energy: f64,
    best_spins: Vec<i8>,
    steps: usize,
    events: usize,
    /// `t,v0,…,gain,energy` rows.
    trace_csv: String,
}

/// Integrates the machine on `graph` with settings from `config` text.
#[pyfunction]
#[pyo3(signature = (graph, config = None, seed = 0))]
fn simulate(py: Python<'_>, graph: &PyGraph, config: Option<&str>, seed: u64) -> PyResult<PyTrajectory> {
    let SolverConfig::Brim(b) = solver_config("brim", config, None)? else { unreachable!("brim requested") };
    let mut settings = b.settings;
    settings.seed = seed;
    settings.perturb.seed = seed;
    let n = graph.inner.n();
    let cfg = BrimConfig { coupling: graph::maxcut_to_ising(&graph.inner), settings };
    let run = py.detach(|| integrate(&cfg)).map_err(to_py)?;
    let spins = match b.readout {
        Readout::Final => run.final_spins(),
        Readout::BestSeen => run.best_spins.clone(),
    };
    Ok(PyTrajectory {
        t_end: run.final_state.t,
        trace_csv: run.trace.to_csv(n),
        spins: spins.into_vec(),
        best_energy: run.best_energy,
        best_spins: run.best_spins.into_vec(),
        steps: run.steps,
        events: run.events,
        final_voltages: run.final_state.v,
    })
}

#[pyfunction]
fn anneal_gain(t: f64, c_min: f64, c_max: f64, tau_anneal: f64) -> PyResult<f64> {
    let s = AnnealSchedule::exponential(c_min, c_max, tau_anneal).map_err(to_py)?;
    Ok(dynamics::anneal_gain(t, &s))
}

#[pyfunction]
#[pyo3(signature = (v, v_stable = 1.0, g_peak = 1.0, shape = "cubic"))]
fn ziv_current(v: f64, v_stable: f64, g_peak: f64, shape: &str) -> PyResult<f64> {
    let shape = match shape {
        "cubic" => ZivShape::Cubic,
        "piecewise_linear" => ZivShape::PiecewiseLinear,
        other => return Err(PyValueError::new_err(format!("unknown shape `{other}`"))),
    };
    let p = ZivParams::new(v_stable, g_peak, shape).map_err(to_py)?;
    Ok(dynamics::ziv_current(v, &p))
}

#[pymodule]
fn brim(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyRunReport>()?;
    m.add_class::<PyTrajectory>()?;
    m.add_function(wrap_pyfunction!(gen_random_graph, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    m.add_function(wrap_pyfunction!(anneal_gain, m)?)?;
    m.add_function(wrap_pyfunction!(ziv_current, m)?)?;
    Ok(())
}
