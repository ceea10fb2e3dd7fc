//! Report types and command implementations behind the `gpgrowth` binary.

use gpgrowth_core::analysis::{check_rate_equality, rc_sigma, RateEstimate, DEFAULT_TOL};
use gpgrowth_core::formulas::GrowthEngine;
use gpgrowth_core::graph::{GraphSpec, VertexSubset};
use gpgrowth_core::oracle::{enumerate_ball, enumerate_conjugacy, DEFAULT_CLOSURE_BUDGET};
use gpgrowth_core::series::TruncatedSeries;
use num_bigint::BigInt;
use thiserror::Error;

pub const DEFAULT_DEGREE: usize = 32;
pub const DEFAULT_WINDOW: usize = 8;
pub const DEFAULT_MAX_LENGTH: usize = 6;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Graph(#[from] gpgrowth_core::graph::GraphError),
    #[error("{0}")]
    Series(#[from] gpgrowth_core::series::SeriesError),
    #[error("{0}")]
    Oracle(#[from] gpgrowth_core::oracle::OracleError),
    #[error("{0}")]
    Analysis(#[from] gpgrowth_core::analysis::AnalysisError),
    #[error("cannot read `{path}`: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    /// Process exit code: 1 usage/parse, 3 unsupported feature.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Oracle(gpgrowth_core::oracle::OracleError::UnsupportedVertexGroup(_)) => 3,
            CliError::Oracle(_) => 3,
            _ => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Formula,
    Oracle,
}

/// One named series with its coefficients and optional closed form and
/// rate estimate; the unit of CLI output.
#[derive(Clone, Debug)]
pub struct SeriesReport {
    pub label: String,
    pub coefficients: Vec<BigInt>,
    pub closed_form: Option<String>,
    pub provenance: Provenance,
    pub rate: Option<RateEstimate>,
}

impl SeriesReport {
    fn from_series(label: &str, s: &TruncatedSeries, provenance: Provenance) -> Self {
        SeriesReport {
            label: label.to_string(),
            coefficients: s.coeffs().to_vec(),
            closed_form: None,
            provenance,
            rate: None,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "label": self.label,
            "coefficients": self.coefficients.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "closed_form": self.closed_form,
            "provenance": match self.provenance {
                Provenance::Formula => "formula",
                Provenance::Oracle => "oracle",
            },
            "rate": self.rate.map(|r| serde_json::json!({
                "value": r.value,
                "degree_used": r.degree_used,
            })),
        })
    }
}

pub fn load_graph(path: &str) -> Result<GraphSpec, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| CliError::Io { path: path.to_string(), source })?;
    Ok(GraphSpec::from_json(&text)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrowthMode {
    Rational,
    Truncated,
}

pub struct GrowthOutput {
    pub report: SeriesReport,
    /// Set when rational mode was requested but a custom truncated vertex
    /// series forced truncated arithmetic.
    pub mode_downgraded: bool,
}

/// Standard growth series of the whole graph product.
pub fn cmd_growth(g: &GraphSpec, degree: usize, mode: GrowthMode) -> Result<GrowthOutput, CliError> {
    let engine = GrowthEngine::new(g, degree);
    let sigma = engine.sigma(g.full_set())?;
    let expansion = sigma.expand(degree)?;
    let mut report = SeriesReport::from_series("sigma", &expansion, Provenance::Formula);
    let mut downgraded = false;
    match (mode, sigma.as_rational()) {
        (GrowthMode::Rational, Some(r)) => report.closed_form = Some(r.to_string()),
        (GrowthMode::Rational, None) => downgraded = true,
        (GrowthMode::Truncated, _) => {}
    }
    Ok(GrowthOutput { report, mode_downgraded: downgraded })
}

pub struct ConjGrowthOutput {
    pub report: SeriesReport,
    /// Human-readable description of the top-level recursion step.
    pub decomposition: Vec<String>,
}

/// Conjugacy growth series plus the top-level decomposition summary.
pub fn cmd_conjgrowth(g: &GraphSpec, degree: usize) -> Result<ConjGrowthOutput, CliError> {
    let engine = GrowthEngine::new(g, degree);
    let s = g.full_set();
    let conj = engine.sigma_conj(s)?;
    let report = SeriesReport::from_series("sigma_conj", &conj, Provenance::Formula);
    let mut lines = Vec::new();
    if s.len() >= 2 {
        let v = s
            .iter()
            .min_by_key(|&v| (g.degree_within(v, s), v))
            .unwrap();
        let name = |set: VertexSubset| -> String {
            if set.is_empty() {
                "{}".to_string()
            } else {
                let names: Vec<&str> =
                    set.iter().map(|u| g.vertex(u).name.as_str()).collect();
                format!("{{{}}}", names.join(","))
            }
        };
        let lk = g.neighbours(v).intersect(s);
        let pivot_name = g.vertex(v).name.clone();
        if g.is_cone_vertex_within(v, s) {
            lines.push(format!(
                "cone vertex {}: sigma_conj(V) = sigma_conj({}) * sigma_conj({{{}}})",
                pivot_name,
                name(lk),
                pivot_name
            ));
        } else {
            lines.push(format!("pivot {}:", pivot_name));
            lines.push(format!("  term 1: sigma_conj({})", name(s.remove(v))));
            lines.push(format!(
                "  term 2: sigma_conj({}) * (sigma_conj({{{}}}) - 1)",
                name(lk),
                pivot_name
            ));
            for sub in lk.subsets() {
                lines.push(format!(
                    "  term 3 summand S={}: mobius({}) * neck(transversal(S) * (sigma({{{}}}) - 1))",
                    name(sub),
                    name(sub),
                    pivot_name
                ));
            }
        }
    }
    Ok(ConjGrowthOutput { report, decomposition: lines })
}

#[derive(Clone, Debug)]
pub struct VerifyRow {
    pub length: usize,
    pub formula: BigInt,
    pub oracle: u64,
    pub matches: bool,
}

pub struct VerifyOutput {
    pub sigma_rows: Vec<VerifyRow>,
    pub conj_rows: Vec<VerifyRow>,
    pub all_match: bool,
}

fn compare(formula: &TruncatedSeries, oracle: &[u64]) -> Vec<VerifyRow> {
    oracle
        .iter()
        .enumerate()
        .map(|(n, &count)| {
            let f = formula.coeff(n);
            let matches = f == BigInt::from(count);
            VerifyRow { length: n, formula: f, oracle: count, matches }
        })
        .collect()
}

/// Formula vs oracle for both series up to length n.
pub fn cmd_verify(g: &GraphSpec, max_length: usize, budget: usize) -> Result<VerifyOutput, CliError> {
    let engine = GrowthEngine::new(g, max_length);
    let sigma = engine.sigma(g.full_set())?.expand(max_length)?;
    let conj = engine.sigma_conj(g.full_set())?;
    let ball = enumerate_ball(g, max_length)?;
    let classes = enumerate_conjugacy(g, max_length, budget)?;
    let sigma_rows = compare(&sigma, &ball);
    let conj_rows = compare(&conj, &classes);
    let all_match =
        sigma_rows.iter().all(|r| r.matches) && conj_rows.iter().all(|r| r.matches);
    Ok(VerifyOutput { sigma_rows, conj_rows, all_match })
}

pub struct RateOutput {
    pub sigma_rate: RateEstimate,
    pub conj_rate: RateEstimate,
    pub difference: f64,
    pub rc_sigma_exact: Option<f64>,
    pub rc_sigma_pivot: Option<f64>,
    pub polynomial: bool,
}

/// Rate estimates for sigma and sigma-conj, with exact RC values where
/// rational closed forms exist.
pub fn cmd_rate(g: &GraphSpec, degree: usize, window: usize) -> Result<RateOutput, CliError> {
    let report = check_rate_equality(g, degree, window)?;
    let rc_pivot = rc_sigma(g, DEFAULT_TOL).ok().flatten();
    let polynomial = report.rc_sigma.is_none() && report.sigma_rate.value <= 1.0 + 1e-9;
    Ok(RateOutput {
        sigma_rate: report.sigma_rate,
        conj_rate: report.conj_rate,
        difference: report.difference,
        rc_sigma_exact: report.rc_sigma,
        rc_sigma_pivot: rc_pivot,
        polynomial,
    })
}

pub fn closure_budget_from_env() -> usize {
    std::env::var("GPGROWTH_BUDGET")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_CLOSURE_BUDGET)
}
