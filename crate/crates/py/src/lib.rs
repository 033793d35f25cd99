//! Python bindings. Vertex ids are 0-based here, as in the Rust API; only
//! the text format is 1-based.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use sfast_core::format::{parse_instance, serialize_instance};
use sfast_core::generate::{GenParams, Model};
use sfast_core::reduce::{write_trace, KernelStatus};
use sfast_core::solve::ProviderKind;
use sfast_core::{Arc, ArcSet, Error, Tournament, VertexOrder};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::ProviderFailure(_) | Error::Replay(_) | Error::PreconditionViolated(_) => {
            PyRuntimeError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn arc_set(arcs: Vec<(usize, usize)>) -> ArcSet {
    arcs.into_iter().map(|(u, v)| Arc::new(u, v)).collect()
}

fn arc_list(s: &ArcSet) -> Vec<(usize, usize)> {
    s.iter().map(|a| (a.tail, a.head)).collect()
}

/// A tournament with terminals and a budget.
#[pyclass(name = "Instance", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyInstance(sfast_core::Instance);

#[pymethods]
impl PyInstance {
    /// Build from the arcs `(u, v)` meaning `u -> v`, one per vertex pair.
    #[new]
    fn new(n: usize, arcs: Vec<(usize, usize)>, terminals: Vec<usize>, k: usize) -> PyResult<Self> {
        let t = Tournament::from_arcs(n, arcs.into_iter().map(|(u, v)| Arc::new(u, v)))
            .map_err(to_py)?;
        Ok(PyInstance(
            sfast_core::Instance::new(t, terminals, k).map_err(to_py)?,
        ))
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        parse_instance(text).map(PyInstance).map_err(to_py)
    }

    fn to_text(&self) -> String {
        serialize_instance(&self.0)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn k(&self) -> usize {
        self.0.budget()
    }

    #[getter]
    fn terminals(&self) -> Vec<usize> {
        self.0.terminals().collect()
    }

    fn arcs(&self) -> Vec<(usize, usize)> {
        self.0
            .tournament()
            .arcs()
            .map(|a| (a.tail, a.head))
            .collect()
    }

    fn beats(&self, u: usize, v: usize) -> bool {
        u < self.0.n() && v < self.0.n() && self.0.tournament().beats(u, v)
    }

    fn with_budget(&self, k: usize) -> Self {
        PyInstance(self.0.with_budget(k))
    }

    fn has_t_cycle(&self) -> bool {
        sfast_core::has_t_cycle(&self.0)
    }

    fn __repr__(&self) -> String {
        format!(
            "Instance(n={}, k={}, terminals={:?})",
            self.0.n(),
            self.0.budget(),
            self.terminals()
        )
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

fn order(inst: &PyInstance, seq: Vec<usize>) -> PyResult<VertexOrder> {
    if seq.len() != inst.0.n() {
        return Err(PyValueError::new_err("order length differs from n"));
    }
    VertexOrder::new(seq).map_err(to_py)
}

/// Seeded random instance; `model` is "uniform" or "planted".
#[pyfunction]
#[pyo3(signature = (model, n, k, tfrac=0.5, s=0, seed=0))]
fn generate(
    model: &str,
    n: usize,
    k: usize,
    tfrac: f64,
    s: usize,
    seed: u64,
) -> PyResult<PyInstance> {
    let model: Model = model.parse().map_err(to_py)?;
    sfast_core::generate::generate(&GenParams {
        model,
        n,
        k,
        tfrac,
        s,
        seed,
    })
    .map(PyInstance)
    .map_err(to_py)
}

/// Number of affected arcs of `seq`.
#[pyfunction]
fn cost(inst: &PyInstance, seq: Vec<usize>) -> PyResult<usize> {
    Ok(sfast_core::cost(&inst.0, &order(inst, seq)?))
}

#[pyfunction]
fn affected_arcs(inst: &PyInstance, seq: Vec<usize>) -> PyResult<Vec<(usize, usize)>> {
    Ok(arc_list(&sfast_core::affected_arcs(
        &inst.0,
        &order(inst, seq)?,
    )))
}

#[pyfunction]
fn is_regular(inst: &PyInstance, seq: Vec<usize>) -> PyResult<bool> {
    Ok(sfast_core::is_regular(&inst.0, &order(inst, seq)?))
}

/// Regular order with the same cost, and the number of moves made.
#[pyfunction]
fn regularize(inst: &PyInstance, seq: Vec<usize>) -> PyResult<(Vec<usize>, usize)> {
    let rep = sfast_core::regularize(&inst.0, &order(inst, seq)?);
    Ok((rep.result.into_sequence(), rep.moves))
}

#[pyfunction]
fn heuristic_order(inst: &PyInstance) -> Vec<usize> {
    sfast_core::solve::heuristic_order(&inst.0).into_sequence()
}

/// `(optimum, witness)`; `method` is "subset", "branch", or "order".
#[pyfunction]
#[pyo3(signature = (inst, method="branch"))]
fn solve(
    py: Python<'_>,
    inst: &PyInstance,
    method: &str,
) -> PyResult<(usize, Vec<(usize, usize)>)> {
    let inst = inst.0.clone();
    let out = py.detach(|| match method {
        "subset" => sfast_core::solve::exact_subset(&inst, inst.tournament().arc_count()),
        "branch" => Ok(sfast_core::solve::exact_branch(&inst)),
        "order" => sfast_core::solve::exact_order(&inst),
        other => Err(Error::BadParameters(format!("unknown method {other:?}"))),
    });
    let out = out.map_err(to_py)?;
    Ok((out.optimum, arc_list(&out.witness)))
}

#[pyfunction]
fn verify(inst: &PyInstance, witness: Vec<(usize, usize)>) -> bool {
    sfast_core::verify_solution(&inst.0, &arc_set(witness))
}

/// Kernelization outcome.
#[pyclass(name = "KernelResult", frozen)]
struct PyKernelResult {
    #[pyo3(get)]
    status: String,
    #[pyo3(get)]
    instance: PyInstance,
    /// Cost of the final working order, when reduced.
    #[pyo3(get)]
    b: Option<usize>,
    #[pyo3(get)]
    n_max: Option<usize>,
    /// Rule id of each trace record, in order.
    #[pyo3(get)]
    rules: Vec<u8>,
    /// Trace as JSON lines with 1-based ids.
    #[pyo3(get)]
    trace: String,
}

#[pymethods]
impl PyKernelResult {
    fn __repr__(&self) -> String {
        format!(
            "KernelResult(status={:?}, n={}, rules={:?})",
            self.status,
            self.instance.0.n(),
            self.rules
        )
    }
}

/// Reduce `inst`; `provider` is "heuristic" or "exact".
#[pyfunction]
#[pyo3(signature = (inst, provider="heuristic"))]
fn kernelize(py: Python<'_>, inst: &PyInstance, provider: &str) -> PyResult<PyKernelResult> {
    let kind: ProviderKind = provider.parse().map_err(to_py)?;
    let inst = inst.0.clone();
    let res = py
        .detach(|| sfast_core::kernelize(&inst, kind.provider().as_ref()))
        .map_err(to_py)?;
    let status = match res.status {
        KernelStatus::TrivialYes => "yes",
        KernelStatus::TrivialNo => "no",
        KernelStatus::Reduced(_) => "reduced",
    };
    Ok(PyKernelResult {
        status: status.into(),
        instance: PyInstance(res.status.output_instance()),
        b: res.bounds.map(|b| b.b),
        n_max: res.bounds.map(|b| b.n_max),
        rules: res.trace.iter().map(|r| r.rule).collect(),
        trace: write_trace(&res.trace).map_err(to_py)?,
    })
}

/// `(d, ell_loc, ell_new, l_max, n_max)` for cost `b` and budget `k`.
#[pyfunction]
fn bounds(b: usize, k: usize) -> (usize, usize, usize, usize, usize) {
    let s = sfast_core::BoundSet::new(b, k);
    (s.d, s.ell_loc, s.ell_new, s.l_max, s.n_max)
}

#[pymodule]
fn sfast(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyInstance>()?;
    m.add_class::<PyKernelResult>()?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(cost, m)?)?;
    m.add_function(wrap_pyfunction!(affected_arcs, m)?)?;
    m.add_function(wrap_pyfunction!(is_regular, m)?)?;
    m.add_function(wrap_pyfunction!(regularize, m)?)?;
    m.add_function(wrap_pyfunction!(heuristic_order, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(kernelize, m)?)?;
    m.add_function(wrap_pyfunction!(bounds, m)?)?;
    Ok(())
}
