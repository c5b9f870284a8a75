//! Python bindings for the cyclocode library.
//!
//! The surface mirrors the command-line interface: construct a code from
//! a quartic-class sequence, read its generator, measure its minimum
//! weight, and classify it against the case tables. Structured results
//! come back as plain dicts so callers need no wrapper types.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use cyclocode::code::code_from_sequence;
use cyclocode::cyclotomy::quartic_decomposition;
use cyclocode::field::Field;
use cyclocode::seq::{SeqKind, SequenceSpec};
use cyclocode::verify::{classify_case, verify_prediction};
use cyclocode::weights::{min_weight as lib_min_weight, Tier};

fn to_py_err(e: cyclocode::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_kind(seq: &str) -> PyResult<SeqKind> {
    match seq {
        "s1" | "S1" => Ok(SeqKind::S1),
        "s2" | "S2" => Ok(SeqKind::S2),
        other => Err(PyValueError::new_err(format!(
            "unknown sequence kind {other:?}, expected \"s1\" or \"s2\""
        ))),
    }
}

fn parse_tier(tier: &str) -> PyResult<Tier> {
    match tier {
        "fast" => Ok(Tier::Fast),
        "extended" => Ok(Tier::Extended),
        other => Err(PyValueError::new_err(format!(
            "unknown tier {other:?}, expected \"fast\" or \"extended\""
        ))),
    }
}

fn spec_for(p: u64, m: u32, n: u64, seq: &str, rho: Option<u64>) -> PyResult<SequenceSpec> {
    let field = Field::galois(p, m).map_err(to_py_err)?;
    SequenceSpec::new(parse_kind(seq)?, n, &field, rho).map_err(to_py_err)
}

fn json_to_py(py: Python<'_>, value: &serde_json::Value) -> PyResult<PyObject> {
    Ok(match value {
        serde_json::Value::Null => py.None(),
        serde_json::Value::Bool(b) => b.into_py(py),
        serde_json::Value::Number(x) => {
            if let Some(i) = x.as_i64() {
                i.into_py(py)
            } else if let Some(u) = x.as_u64() {
                u.into_py(py)
            } else {
                x.as_f64().expect("finite JSON number").into_py(py)
            }
        }
        serde_json::Value::String(s) => s.into_py(py),
        serde_json::Value::Array(items) => {
            let list = PyList::empty_bound(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.into_py(py)
        }
        serde_json::Value::Object(map) => {
            let dict = PyDict::new_bound(py);
            for (key, item) in map {
                dict.set_item(key, json_to_py(py, item)?)?;
            }
            dict.into_py(py)
        }
    })
}

/// Library version, exposed for smoke tests.
#[pyfunction]
fn version() -> &'static str {
    env!("CARGO_PKG_VERSION")
}

/// Writes prime n = 1 mod 4 as u^2 + 4 v^2 with u = 1 mod 4, v >= 0.
#[pyfunction]
fn decompose(n: u64) -> PyResult<(i64, u64)> {
    quartic_decomposition(n).map_err(to_py_err)
}

/// Generator polynomial of the code, highest power first.
#[pyfunction]
#[pyo3(signature = (p, m, n, seq, rho=None))]
fn generator(p: u64, m: u32, n: u64, seq: &str, rho: Option<u64>) -> PyResult<String> {
    let spec = spec_for(p, m, n, seq, rho)?;
    let code = code_from_sequence(&spec).map_err(to_py_err)?;
    Ok(code.generator().to_string())
}

/// Full code document: length, field size, generator, dimension.
#[pyfunction]
#[pyo3(signature = (p, m, n, seq, rho=None))]
fn code(py: Python<'_>, p: u64, m: u32, n: u64, seq: &str, rho: Option<u64>) -> PyResult<PyObject> {
    let spec = spec_for(p, m, n, seq, rho)?;
    let built = code_from_sequence(&spec).map_err(to_py_err)?;
    json_to_py(py, &built.to_json())
}

/// Minimum-weight report for the code, as a dict.
#[pyfunction]
#[pyo3(signature = (p, m, n, seq, rho=None, tier="fast", seed=7))]
fn min_weight(
    py: Python<'_>,
    p: u64,
    m: u32,
    n: u64,
    seq: &str,
    rho: Option<u64>,
    tier: &str,
    seed: u64,
) -> PyResult<PyObject> {
    let spec = spec_for(p, m, n, seq, rho)?;
    let built = code_from_sequence(&spec).map_err(to_py_err)?;
    let report = lib_min_weight(&built, parse_tier(tier)?, seed).map_err(to_py_err)?;
    json_to_py(py, &report.to_json())
}

/// Case label of the parameters in the generator tables, e.g. "T4 case 2".
#[pyfunction]
#[pyo3(signature = (p, m, n, seq, rho=None))]
fn classify(p: u64, m: u32, n: u64, seq: &str, rho: Option<u64>) -> PyResult<String> {
    let case = classify_case(p, m, n, parse_kind(seq)?, rho).map_err(to_py_err)?;
    Ok(case.label())
}

/// Checks the tabulated prediction against a direct computation and
/// returns the verdict name, e.g. "exact-match".
#[pyfunction]
#[pyo3(signature = (p, m, n, seq, rho=None))]
fn verify(p: u64, m: u32, n: u64, seq: &str, rho: Option<u64>) -> PyResult<String> {
    let case = classify_case(p, m, n, parse_kind(seq)?, rho).map_err(to_py_err)?;
    let spec = spec_for(p, m, n, seq, rho)?;
    let outcome = verify_prediction(&case, &spec).map_err(to_py_err)?;
    Ok(outcome.verdict.name().to_string())
}

#[pymodule]
fn cyclocode_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(version, m)?)?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    m.add_function(wrap_pyfunction!(generator, m)?)?;
    m.add_function(wrap_pyfunction!(code, m)?)?;
    m.add_function(wrap_pyfunction!(min_weight, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
