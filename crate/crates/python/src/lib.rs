//! Python bindings. Structured results come back as plain dicts/lists
//! (decoded from the library's JSON form).

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyModule;
use serde::Serialize;

use grassbwb::bwb::bwb_bundle;
use grassbwb::deglocus::surface_invariants as surface;
use grassbwb::exactness::{solve_abutment, E1Page};
use grassbwb::expr::{parse_bundle, parse_class, parse_representation};
use grassbwb::pipeline::{hodge_numbers as hodge, reproduce as run_reproduce};
use grassbwb::weights::IntegerWeight;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py, T: Serialize>(py: Python<'py>, x: &T) -> PyResult<Bound<'py, PyAny>> {
    let s = serde_json::to_string(x).map_err(value_error)?;
    PyModule::import(py, "json")?.call_method1("loads", (s,))
}

/// Cohomology of a bundle expression on G(k,n): `{degree: dimension}` plus summands.
#[pyfunction]
#[pyo3(signature = (bundle, k = 2, n = 6, twist = 0))]
fn bwb<'py>(py: Python<'py>, bundle: &str, k: usize, n: usize, twist: i64) -> PyResult<Bound<'py, PyAny>> {
    let b = parse_bundle(bundle, k, n).map_err(value_error)?;
    to_py(py, &bwb_bundle(&b.twist(twist)).map_err(value_error)?)
}

/// Degree of a class expression, e.g. `"s1^4 * classF"`.
#[pyfunction]
#[pyo3(signature = (class, k = 2, n = 6))]
fn integrate(class: &str, k: usize, n: usize) -> PyResult<i128> {
    Ok(parse_class(class, k, n).map_err(value_error)?.integrate())
}

/// A class expression rendered in the Schubert basis.
#[pyfunction]
#[pyo3(signature = (class, k = 2, n = 6))]
fn schubert(class: &str, k: usize, n: usize) -> PyResult<String> {
    Ok(parse_class(class, k, n).map_err(value_error)?.to_string())
}

/// Irreducible decomposition of a GL(rank) expression as `[(weight, mult)]`.
#[pyfunction]
fn decompose(expr: &str, rank: usize) -> PyResult<Vec<(Vec<i64>, i64)>> {
    let x = parse_representation(expr, rank).map_err(value_error)?;
    Ok(x.terms().map(|(w, m)| (w.entries().to_vec(), m)).collect())
}

#[pyfunction]
fn weyl_dimension(weight: Vec<i64>) -> PyResult<u128> {
    grassbwb::weyl_dimension(&IntegerWeight::new(weight)).map_err(value_error)
}

/// Abutment of a first page given as JSON.
#[pyfunction]
fn abutment<'py>(py: Python<'py>, page: &str) -> PyResult<Bound<'py, PyAny>> {
    let page: E1Page = serde_json::from_str(page).map_err(value_error)?;
    to_py(py, &solve_abutment(&page).map_err(value_error)?)
}

#[pyfunction]
fn surface_invariants(py: Python<'_>) -> PyResult<Bound<'_, PyAny>> {
    to_py(py, &surface().map_err(value_error)?)
}

#[pyfunction]
fn hodge_numbers(py: Python<'_>) -> PyResult<Bound<'_, PyAny>> {
    to_py(py, &hodge().map_err(value_error)?)
}

/// The full report; `report["checks"]` lists every fixture comparison.
#[pyfunction]
fn reproduce(py: Python<'_>) -> PyResult<Bound<'_, PyAny>> {
    to_py(py, &run_reproduce().map_err(value_error)?)
}

#[pymodule]
fn pygrassbwb(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_function(wrap_pyfunction!(bwb, m)?)?;
    m.add_function(wrap_pyfunction!(integrate, m)?)?;
    m.add_function(wrap_pyfunction!(schubert, m)?)?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    m.add_function(wrap_pyfunction!(weyl_dimension, m)?)?;
    m.add_function(wrap_pyfunction!(abutment, m)?)?;
    m.add_function(wrap_pyfunction!(surface_invariants, m)?)?;
    m.add_function(wrap_pyfunction!(hodge_numbers, m)?)?;
    m.add_function(wrap_pyfunction!(reproduce, m)?)?;
    Ok(())
}
