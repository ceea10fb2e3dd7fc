//! Python bindings: parse a graph JSON string and compute series,
//! oracle counts and rate estimates.

use gpgrowth_core::analysis::{check_rate_equality, rc_sigma, DEFAULT_TOL};
use gpgrowth_core::formulas::GrowthEngine;
use gpgrowth_core::graph::GraphSpec;
use gpgrowth_core::oracle::{enumerate_ball, enumerate_conjugacy, DEFAULT_CLOSURE_BUDGET};
use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn parse(json: &str) -> PyResult<GraphSpec> {
    GraphSpec::from_json(json).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Coefficients of the standard growth series up to `degree`, plus the
/// rational closed form as a string when one exists.
#[pyfunction]
#[pyo3(signature = (graph_json, degree = 32))]
fn growth_series(graph_json: &str, degree: usize) -> PyResult<(Vec<BigInt>, Option<String>)> {
    let g = parse(graph_json)?;
    let engine = GrowthEngine::new(&g, degree);
    let sigma = engine.sigma(g.full_set()).map_err(err)?;
    let coeffs = sigma.expand(degree).map_err(err)?.coeffs().to_vec();
    Ok((coeffs, sigma.as_rational().map(|r| r.to_string())))
}

/// Coefficients of the conjugacy growth series up to `degree`.
#[pyfunction]
#[pyo3(signature = (graph_json, degree = 32))]
fn conjugacy_growth_series(graph_json: &str, degree: usize) -> PyResult<Vec<BigInt>> {
    let g = parse(graph_json)?;
    let engine = GrowthEngine::new(&g, degree);
    Ok(engine.sigma_conj(g.full_set()).map_err(err)?.coeffs().to_vec())
}

/// Brute-force sphere sizes for lengths 0..max_length.
#[pyfunction]
fn oracle_ball(graph_json: &str, max_length: usize) -> PyResult<Vec<u64>> {
    let g = parse(graph_json)?;
    enumerate_ball(&g, max_length).map_err(err)
}

/// Brute-force conjugacy class counts for lengths 0..max_length.
#[pyfunction]
fn oracle_conjugacy(graph_json: &str, max_length: usize) -> PyResult<Vec<u64>> {
    let g = parse(graph_json)?;
    enumerate_conjugacy(&g, max_length, DEFAULT_CLOSURE_BUDGET).map_err(err)
}

/// Formula-vs-oracle check; returns True when every coefficient of both
/// series matches the enumeration.
#[pyfunction]
fn verify(graph_json: &str, max_length: usize) -> PyResult<bool> {
    let g = parse(graph_json)?;
    let engine = GrowthEngine::new(&g, max_length);
    let sigma = engine
        .sigma(g.full_set())
        .and_then(|s| s.expand(max_length))
        .map_err(err)?;
    let conj = engine.sigma_conj(g.full_set()).map_err(err)?;
    let ball = enumerate_ball(&g, max_length).map_err(err)?;
    let classes = enumerate_conjugacy(&g, max_length, DEFAULT_CLOSURE_BUDGET).map_err(err)?;
    let ok = ball.iter().enumerate().all(|(n, &c)| sigma.coeff(n) == BigInt::from(c))
        && classes.iter().enumerate().all(|(n, &c)| conj.coeff(n) == BigInt::from(c));
    Ok(ok)
}

/// Rate estimates: (sigma_rate, sigma_conj_rate, exact RC of sigma or None).
#[pyfunction]
#[pyo3(signature = (graph_json, degree = 32, window = 8))]
fn rate_report(graph_json: &str, degree: usize, window: usize) -> PyResult<(f64, f64, Option<f64>)> {
    let g = parse(graph_json)?;
    let report = check_rate_equality(&g, degree, window).map_err(err)?;
    let rc = rc_sigma(&g, DEFAULT_TOL).ok().flatten().or(report.rc_sigma);
    Ok((report.sigma_rate.value, report.conj_rate.value, rc))
}

#[pymodule]
fn gpgrowth_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(growth_series, m)?)?;
    m.add_function(wrap_pyfunction!(conjugacy_growth_series, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_ball, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_conjugacy, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(rate_report, m)?)?;
    Ok(())
}
