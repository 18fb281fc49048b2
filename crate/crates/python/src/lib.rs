//! Python bindings. Intervals come back as `{"lo", "hi", "exact"}` dicts
//! with outward-rounded float bounds and exact dyadic endpoints.

pub mod api;

use pyo3::create_exception;
use pyo3::exceptions::{PyOSError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde_json::Value;

use pcfheight::enumeration::EnumerationConfig;
use pcfheight::Error;

use api::Target;

create_exception!(pcfheight, UndecidedError, PyRuntimeError, "The budget ran out before a decision.");

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Undecided { .. } | Error::ComparisonUndecided => UndecidedError::new_err(e.to_string()),
        Error::Io(_) => PyOSError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn to_py(py: Python<'_>, v: &Value) -> PyResult<PyObject> {
    Ok(match v {
        Value::Null => py.None(),
        Value::Bool(b) => b.into_py(py),
        Value::Number(n) => match n.as_i64() {
            Some(i) => i.into_py(py),
            None => n.as_f64().unwrap_or(f64::NAN).into_py(py),
        },
        Value::String(s) => s.into_py(py),
        Value::Array(xs) => {
            let list = PyList::empty_bound(py);
            for x in xs {
                list.append(to_py(py, x)?)?;
            }
            list.into_py(py)
        }
        Value::Object(m) => {
            let dict = PyDict::new_bound(py);
            for (k, x) in m {
                dict.set_item(k, to_py(py, x)?)?;
            }
            dict.into_py(py)
        }
    })
}

fn out(py: Python<'_>, r: pcfheight::Result<Value>) -> PyResult<PyObject> {
    to_py(py, &r.map_err(py_err)?)
}

/// Enclosure of the canonical height of `point` (rational or `x+y*sqrt(D)`).
#[pyfunction]
#[pyo3(signature = (poly, point, precision=None, iterations=64))]
fn canonical_height(py: Python<'_>, poly: &str, point: &str, precision: Option<u32>, iterations: usize) -> PyResult<PyObject> {
    let b = api::budget(precision, iterations);
    let h = py.allow_threads(|| api::canonical_height(poly, point, &b)).map_err(py_err)?;
    to_py(py, &api::interval_json(&h))
}

/// Full report with the local heights; never raises `UndecidedError`.
#[pyfunction]
#[pyo3(signature = (poly, point, precision=None, iterations=64))]
fn height_report(py: Python<'_>, poly: &str, point: &str, precision: Option<u32>, iterations: usize) -> PyResult<PyObject> {
    let b = api::budget(precision, iterations);
    let r = py.allow_threads(|| api::height_report(poly, point, &b));
    out(py, r)
}

#[pyfunction]
#[pyo3(signature = (poly, precision=None, iterations=64))]
fn critical_height(py: Python<'_>, poly: &str, precision: Option<u32>, iterations: usize) -> PyResult<PyObject> {
    let b = api::budget(precision, iterations);
    let h = py.allow_threads(|| api::critical_height(poly, &b)).map_err(py_err)?;
    to_py(py, &api::interval_json(&h))
}

/// Exactly one of `poly`, `cubic=(A, B)` or `quadratic=c`.
#[pyfunction]
#[pyo3(signature = (poly=None, *, cubic=None, quadratic=None, precision=None, iterations=64))]
fn certify(
    py: Python<'_>,
    poly: Option<&str>,
    cubic: Option<(String, String)>,
    quadratic: Option<String>,
    precision: Option<u32>,
    iterations: usize,
) -> PyResult<PyObject> {
    let target = match (poly, &cubic, &quadratic) {
        (Some(p), None, None) => Target::Poly(p),
        (None, Some((a, b)), None) => Target::Cubic(a, b),
        (None, None, Some(c)) => Target::Quadratic(c),
        _ => return Err(PyValueError::new_err("give exactly one of poly, cubic=(A, B), quadratic=c")),
    };
    let b = api::budget(precision, iterations);
    let r = py.allow_threads(|| api::certify(target, &b));
    out(py, r)
}

fn config(overrides: Option<&Bound<'_, PyDict>>) -> PyResult<EnumerationConfig> {
    let mut cfg = EnumerationConfig::default();
    if let Some(d) = overrides {
        for (k, v) in d.iter() {
            let key: String = k.extract()?;
            let value = match v.extract::<Vec<u64>>() {
                Ok(ps) => ps.iter().map(u64::to_string).collect::<Vec<_>>().join(","),
                Err(_) => v.str()?.to_string().to_lowercase(),
            };
            cfg.set(&key, &value).map_err(py_err)?;
        }
    }
    cfg.validate().map_err(py_err)?;
    Ok(cfg)
}

/// The cubic search; keyword arguments override config keys
/// (`n_arch`, `primes`, `strict`, `workers`, ...).
#[pyfunction]
#[pyo3(signature = (**overrides))]
fn enumerate_cubics(py: Python<'_>, overrides: Option<&Bound<'_, PyDict>>) -> PyResult<PyObject> {
    let cfg = config(overrides)?;
    let r = py.allow_threads(|| api::enumerate_cubics(&cfg));
    out(py, r)
}

#[pyfunction]
#[pyo3(signature = (**overrides))]
fn enumerate_quadratics(py: Python<'_>, overrides: Option<&Bound<'_, PyDict>>) -> PyResult<PyObject> {
    let cfg = config(overrides)?;
    let r = py.allow_threads(|| api::enumerate_quadratics(&cfg));
    out(py, r)
}

/// Rows of `h_crit`, `h_mc` and their ratio; `cs` are rational strings.
#[pyfunction]
#[pyo3(signature = (family, degree, cs, precision=None, iterations=64))]
fn family_scan(
    py: Python<'_>,
    family: &str,
    degree: usize,
    cs: Vec<String>,
    precision: Option<u32>,
    iterations: usize,
) -> PyResult<PyObject> {
    let b = api::budget(precision, iterations);
    let r = py.allow_threads(|| api::family_scan(family, degree, &cs, &b));
    out(py, r)
}

#[pyfunction]
fn canonical_poly(s: &str) -> PyResult<String> {
    api::canonical_poly(s).map_err(py_err)
}

#[pymodule]
#[pyo3(name = "pcfheight")]
fn pcfheight_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("UndecidedError", m.py().get_type_bound::<UndecidedError>())?;
    m.add_function(wrap_pyfunction!(canonical_height, m)?)?;
    m.add_function(wrap_pyfunction!(height_report, m)?)?;
    m.add_function(wrap_pyfunction!(critical_height, m)?)?;
    m.add_function(wrap_pyfunction!(certify, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_cubics, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_quadratics, m)?)?;
    m.add_function(wrap_pyfunction!(family_scan, m)?)?;
    m.add_function(wrap_pyfunction!(canonical_poly, m)?)?;
    Ok(())
}
