//! Python bindings. Reports come back as plain dicts and lists.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyList;

use qact::numlin::{CMatrix, C64};
use qact::oplus::{self, ChainKind, FParam, FusionLabel};

fn to_py(py: Python<'_>, v: &serde_json::Value) -> PyResult<PyObject> {
    let json = py.import_bound("json")?;
    Ok(json.call_method1("loads", (v.to_string(),))?.unbind())
}

fn runtime<E: std::fmt::Display>(e: E) -> PyErr {
    PyRuntimeError::new_err(e.to_string())
}

/// Runs a `qact` command line, e.g. `run(["haar", "data/group_s3.json"])`.
///
/// Returns `(exit_code, report)`; `report` is `None` for usage errors, whose
/// message is raised as `ValueError`.
#[pyfunction]
fn run(py: Python<'_>, args: Vec<String>) -> PyResult<(i32, PyObject)> {
    let out = qact::cli::run(std::iter::once("qact".to_string()).chain(args));
    match out.report {
        Some(r) => Ok((out.code, to_py(py, &serde_json::to_value(&r).map_err(runtime)?)?)),
        None if out.code == 0 => Ok((0, out.stdout.into_py(py))),
        None => Err(PyValueError::new_err(out.stderr.trim().to_string())),
    }
}

/// Edge weights of a truncated chain walk, in edge order.
#[pyfunction]
#[pyo3(signature = (kind, length, n=None, q=None, x=0.0))]
fn chain_weights(kind: &str, length: usize, n: Option<usize>, q: Option<f64>, x: f64) -> PyResult<Vec<f64>> {
    let kind = match kind {
        "oplus-quotient" => ChainKind::Quotient { n: n.ok_or_else(|| PyValueError::new_err("n is required"))? },
        "podles" => ChainKind::Podles { q: q.ok_or_else(|| PyValueError::new_err("q is required"))?, x },
        other => return Err(PyValueError::new_err(format!("unknown chain kind {other:?}"))),
    };
    let w = oplus::chain_walk(&kind, length).map_err(runtime)?;
    Ok(w.edges.iter().map(|e| e.w).collect())
}

/// Quantum dimension of the label `n` (a half-integer) for `|c| = q + 1/q`.
#[pyfunction]
fn qdim(c: f64, n: f64) -> PyResult<f64> {
    Ok(oplus::qdim(c, FusionLabel::from_f64(n).map_err(|e| PyValueError::new_err(e.to_string()))?))
}

fn f_matrix(rows: &Bound<'_, PyList>) -> PyResult<CMatrix> {
    let rows: Vec<Vec<num_complex::Complex64>> = rows.extract()?;
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(PyValueError::new_err("F must be a nonempty square matrix"));
    }
    Ok(CMatrix::from_fn(n, n, |i, j| C64::new(rows[i][j].re, rows[i][j].im)))
}

/// `c_F = sign(F F̄) Tr(F*F)` of a square complex matrix.
#[pyfunction]
#[pyo3(signature = (f, tol=1e-9))]
fn c_invariant(f: &Bound<'_, PyList>, tol: f64) -> PyResult<f64> {
    oplus::c_invariant(&f_matrix(f)?, tol).map_err(runtime)
}

/// Whether two F matrices give monoidally equivalent free orthogonal quantum groups.
#[pyfunction]
#[pyo3(signature = (f1, f2, tol=1e-9))]
fn monoidally_equivalent(f1: &Bound<'_, PyList>, f2: &Bound<'_, PyList>, tol: f64) -> PyResult<bool> {
    oplus::monoidally_equivalent(&f_matrix(f1)?, &f_matrix(f2)?, tol).map_err(runtime)
}

/// `c = −ε Σ λ²` of an F-parameter.
#[pyfunction]
fn c_of_param(bar: Vec<usize>, eps: Vec<i8>, lambda: Vec<f64>) -> PyResult<f64> {
    let p = FParam::new(bar, eps, lambda).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(oplus::c_of_param(&p))
}

#[pymodule]
fn qact_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add_function(wrap_pyfunction!(chain_weights, m)?)?;
    m.add_function(wrap_pyfunction!(qdim, m)?)?;
    m.add_function(wrap_pyfunction!(c_invariant, m)?)?;
    m.add_function(wrap_pyfunction!(monoidally_equivalent, m)?)?;
    m.add_function(wrap_pyfunction!(c_of_param, m)?)?;
    Ok(())
}
