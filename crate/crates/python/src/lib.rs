use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use uso_core::verifier::BruteForceDecision;
use uso_core::{Direction, Outmap, PeriodDecision, QpfConfig, QpfMode, SubsetMask, UsoError};

fn to_py(e: UsoError) -> PyErr {
    match e {
        UsoError::RecoveryExhausted { .. } => PyRuntimeError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn mask(m: &PyOutmap, v: u32) -> PyResult<SubsetMask> {
    let v = SubsetMask::new(v);
    if v.fits(m.inner.dim()) {
        Ok(v)
    } else {
        Err(PyValueError::new_err(format!(
            "vertex {v} outside the {}-cube",
            m.inner.dim()
        )))
    }
}

/// Dense outmap table of an orientation of the n-cube.
#[pyclass(name = "Outmap", module = "uso", frozen)]
struct PyOutmap {
    inner: Outmap,
}

#[pymethods]
impl PyOutmap {
    #[new]
    fn new(n: u32, table: Vec<u32>) -> PyResult<Self> {
        Ok(PyOutmap {
            inner: Outmap::from_table(n, table).map_err(to_py)?,
        })
    }

    #[staticmethod]
    fn uniform(n: u32, a: u32) -> PyResult<Self> {
        Ok(PyOutmap {
            inner: Outmap::uniform(n, SubsetMask::new(a)).map_err(to_py)?,
        })
    }

    #[staticmethod]
    fn psi(n: u32) -> PyResult<Self> {
        Ok(PyOutmap {
            inner: Outmap::psi(n).map_err(to_py)?,
        })
    }

    #[staticmethod]
    #[pyo3(signature = (n, seed=0))]
    fn random(n: u32, seed: u64) -> PyResult<Self> {
        Ok(PyOutmap {
            inner: Outmap::random_uso(n, seed).map_err(to_py)?,
        })
    }

    /// `dir` is "up" or "down".
    #[staticmethod]
    fn combine(lower: &PyOutmap, upper: &PyOutmap, dir: &str) -> PyResult<Self> {
        let dir: Direction = dir.parse().map_err(to_py)?;
        Ok(PyOutmap {
            inner: Outmap::combine(&lower.inner, &upper.inner, dir).map_err(to_py)?,
        })
    }

    #[staticmethod]
    fn deserialize(text: &str) -> PyResult<Self> {
        Ok(PyOutmap {
            inner: Outmap::deserialize(text).map_err(to_py)?,
        })
    }

    fn serialize(&self) -> String {
        self.inner.serialize()
    }

    #[getter]
    fn n(&self) -> u32 {
        self.inner.dim()
    }

    fn table(&self) -> Vec<u32> {
        self.inner.to_bits()
    }

    fn eval(&self, v: u32) -> PyResult<u32> {
        Ok(self.inner.eval(mask(self, v)?).bits())
    }

    fn flip(&self, flips: u32) -> PyResult<Self> {
        Ok(PyOutmap {
            inner: self.inner.flip(SubsetMask::new(flips)).map_err(to_py)?,
        })
    }

    fn is_orientation(&self) -> bool {
        self.inner.is_orientation()
    }

    fn is_uso(&self) -> PyResult<bool> {
        uso_core::is_uso(&self.inner).map_err(to_py)
    }

    fn is_bijection(&self) -> bool {
        uso_core::is_bijection(&self.inner)
    }

    fn global_sink(&self) -> PyResult<u32> {
        Ok(uso_core::global_sink(&self.inner).map_err(to_py)?.bits())
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __eq__(&self, other: &PyOutmap) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Outmap(n={}, table={:?})", self.inner.dim(), self.inner.to_bits())
    }
}

#[pyclass(name = "PeriodResult", module = "uso", frozen, get_all)]
struct PyPeriodResult {
    start: u32,
    orbit: Vec<u32>,
    period: u64,
    sink_candidate: u32,
}

#[pyclass(name = "QpfResult", module = "uso", frozen, get_all)]
struct PyQpfResult {
    measured: Vec<u64>,
    candidates: Vec<u64>,
    recovered_period: Option<u64>,
    queries_used: u64,
    validation_queries: u64,
}

#[pyclass(name = "QuantumSinkReport", module = "uso", frozen, get_all)]
struct PyQuantumSinkReport {
    sink: u32,
    period: u64,
    attempts: u32,
    measured: Vec<u64>,
    candidates: Vec<u64>,
    oracle_queries: u64,
    validation_queries: u64,
    eval_queries: u64,
}

#[pyfunction]
#[pyo3(signature = (m, start=0))]
fn orbit_period(m: &PyOutmap, start: u32) -> PyResult<PyPeriodResult> {
    let r = uso_core::orbit_period(&m.inner, mask(m, start)?).map_err(to_py)?;
    Ok(PyPeriodResult {
        start: r.start.bits(),
        orbit: r.orbit.iter().map(|v| v.bits()).collect(),
        period: r.period,
        sink_candidate: r.sink_candidate.bits(),
    })
}

#[pyfunction]
fn power(m: &PyOutmap, k: u128, u: u32) -> PyResult<u32> {
    Ok(uso_core::period::power(&m.inner, k, mask(m, u)?).map_err(to_py)?.bits())
}

#[pyfunction]
fn sink_via_period(m: &PyOutmap) -> PyResult<u32> {
    Ok(uso_core::sink_via_period(&m.inner).map_err(to_py)?.bits())
}

#[pyfunction]
fn naive_walk_count(m: &PyOutmap) -> PyResult<u64> {
    uso_core::naive_walk_count(&m.inner).map_err(to_py)
}

#[pyfunction]
fn qpf_distribution(period: u64, t: u32) -> PyResult<Vec<f64>> {
    uso_core::qpf_distribution(period, t).map_err(to_py)
}

#[pyfunction]
fn continued_fraction_candidates(j: u64, t: u32, bound: u64) -> Vec<u64> {
    uso_core::continued_fraction_candidates(j, t, bound)
}

fn config(n: u32, t: Option<u32>, samples: u32, seed: u64, mode: &str, retries: u32) -> PyResult<QpfConfig> {
    let mode: QpfMode = mode.parse().map_err(to_py)?;
    Ok(QpfConfig::for_dim(n)
        .with_t(t.unwrap_or(2 * n + 1))
        .with_samples(samples)
        .with_seed(seed)
        .with_mode(mode)
        .with_retries(retries))
}

#[pyfunction]
#[pyo3(signature = (m, t=None, samples=20, seed=0, mode="analytic"))]
fn recover_period(m: &PyOutmap, t: Option<u32>, samples: u32, seed: u64, mode: &str) -> PyResult<PyQpfResult> {
    let cfg = config(m.inner.dim(), t, samples, seed, mode, 1)?;
    let r = uso_core::recover_period(&m.inner, &cfg).map_err(to_py)?;
    Ok(PyQpfResult {
        measured: r.measured,
        candidates: r.candidates,
        recovered_period: r.recovered_period,
        queries_used: r.queries_used,
        validation_queries: r.validation_queries,
    })
}

#[pyfunction]
#[pyo3(signature = (m, t=None, samples=20, seed=0, mode="analytic", retries=3))]
fn quantum_find_sink(
    m: &PyOutmap,
    t: Option<u32>,
    samples: u32,
    seed: u64,
    mode: &str,
    retries: u32,
) -> PyResult<PyQuantumSinkReport> {
    let cfg = config(m.inner.dim(), t, samples, seed, mode, retries)?;
    let r = uso_core::quantum_find_sink(&m.inner, &cfg).map_err(to_py)?;
    Ok(PyQuantumSinkReport {
        sink: r.sink.bits(),
        period: r.period,
        attempts: r.attempts,
        measured: r.measured,
        candidates: r.candidates,
        oracle_queries: r.oracle_queries,
        validation_queries: r.validation_queries,
        eval_queries: r.eval_queries,
    })
}

/// Returns `(sink, decision_calls)`; `decision` is "brute" or "period".
#[pyfunction]
#[pyo3(signature = (m, decision="brute"))]
fn solve_by_facet_decision(m: &PyOutmap, decision: &str) -> PyResult<(u32, u32)> {
    let res = match decision {
        "brute" => {
            let mut oracle = BruteForceDecision::new(&m.inner).map_err(to_py)?;
            uso_core::solve_by_facet_decision(&m.inner, &mut oracle)
        }
        "period" => {
            let mut oracle = PeriodDecision::new(&m.inner).map_err(to_py)?;
            uso_core::solve_by_facet_decision(&m.inner, &mut oracle)
        }
        other => return Err(PyValueError::new_err(format!("unknown decision oracle {other:?}"))),
    }
    .map_err(to_py)?;
    Ok((res.sink.bits(), res.decision_calls))
}

/// Returns `(sink, queries)`.
#[pyfunction]
#[pyo3(signature = (m, start=0, seed=0))]
fn random_edge_walk(m: &PyOutmap, start: u32, seed: u64) -> PyResult<(u32, u64)> {
    let (sink, counter) = uso_core::random_edge_walk(&m.inner, mask(m, start)?, seed).map_err(to_py)?;
    Ok((sink.bits(), counter.count))
}

#[pyfunction]
fn enumerate_usos(n: u32) -> PyResult<Vec<PyOutmap>> {
    Ok(uso_core::enumerate_usos(n)
        .map_err(to_py)?
        .map(|inner| PyOutmap { inner })
        .collect())
}

/// Set notation for a mask, e.g. `5 -> "{1,3}"`.
#[pyfunction]
fn mask_to_set(v: u32) -> String {
    SubsetMask::new(v).to_string()
}

#[pymodule]
fn uso(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyOutmap>()?;
    m.add_class::<PyPeriodResult>()?;
    m.add_class::<PyQpfResult>()?;
    m.add_class::<PyQuantumSinkReport>()?;
    m.add_function(wrap_pyfunction!(orbit_period, m)?)?;
    m.add_function(wrap_pyfunction!(power, m)?)?;
    m.add_function(wrap_pyfunction!(sink_via_period, m)?)?;
    m.add_function(wrap_pyfunction!(naive_walk_count, m)?)?;
    m.add_function(wrap_pyfunction!(qpf_distribution, m)?)?;
    m.add_function(wrap_pyfunction!(continued_fraction_candidates, m)?)?;
    m.add_function(wrap_pyfunction!(recover_period, m)?)?;
    m.add_function(wrap_pyfunction!(quantum_find_sink, m)?)?;
    m.add_function(wrap_pyfunction!(solve_by_facet_decision, m)?)?;
    m.add_function(wrap_pyfunction!(random_edge_walk, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_usos, m)?)?;
    m.add_function(wrap_pyfunction!(mask_to_set, m)?)?;
    Ok(())
}
