//! Radii of convergence and growth rate estimates. Floating point lives
//! here only; the series core stays exact.

use crate::formulas::GrowthEngine;
use crate::graph::GraphSpec;
use crate::poly::{bigint_to_f64, Poly};
use crate::rational::RationalSeries;
use crate::series::{SeriesError, TruncatedSeries};
use num_traits::Zero;
use thiserror::Error;

pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnalysisError {
    #[error("series must have zero constant term and nonnegative coefficients")]
    BadSeries,
    #[error("f(t) stays below 1 on the trusted range; no root reported")]
    NoRootInRange,
    #[error("series error: {0}")]
    Series(#[from] SeriesError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RateMethod {
    CoefficientRoot,
    DenominatorRoot,
    NecklaceRoot,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RateEstimate {
    pub value: f64,
    pub degree_used: usize,
    pub method: RateMethod,
}

/// A series that can be evaluated at a positive real point: either a
/// truncated expansion (a lower bound for nonnegative series) or an
/// exact rational form.
#[derive(Clone, Debug)]
pub enum SeriesFn {
    Truncated(TruncatedSeries),
    Rational(RationalSeries),
}

impl SeriesFn {
    fn eval(&self, t: f64) -> f64 {
        match self {
            SeriesFn::Truncated(f) => {
                let mut acc = 0.0;
                for c in f.coeffs().iter().rev() {
                    acc = acc * t + bigint_to_f64(c);
                }
                acc
            }
            SeriesFn::Rational(r) => r.numerator().eval_f64(t) / r.denominator().eval_f64(t),
        }
    }

    fn check_preconditions(&self) -> Result<(), AnalysisError> {
        let expansion = match self {
            SeriesFn::Truncated(f) => f.clone(),
            SeriesFn::Rational(r) => r.expand(64).map_err(|_| AnalysisError::BadSeries)?,
        };
        if !expansion.constant_term().is_zero()
            || expansion.has_negative_coeff()
            || expansion.is_zero()
        {
            return Err(AnalysisError::BadSeries);
        }
        Ok(())
    }

    /// First pole of a rational form on (0, 1], if any: a sign change of
    /// the denominator.
    fn pole_bound(&self) -> f64 {
        if let SeriesFn::Rational(r) = self {
            let den = r.denominator();
            let d0 = den.eval_f64(0.0);
            let steps = 4096;
            for i in 1..=steps {
                let t = i as f64 / steps as f64;
                if den.eval_f64(t) * d0 <= 0.0 {
                    return t - 1.0 / steps as f64;
                }
            }
        }
        1.0
    }
}

/// The unique positive t with f(t) = 1, for f with f(0) = 0 and
/// nonnegative coefficients, found by bisection on [0, 1].
pub fn root_of_unity_equation(f: &SeriesFn, tol: f64) -> Result<f64, AnalysisError> {
    f.check_preconditions()?;
    let hi_max = f.pole_bound();
    // f is strictly increasing on [0, RC); scan for the first point at
    // or above 1 to bracket the root.
    let steps = 4096;
    let mut lo = 0.0f64;
    let mut hi = None;
    for i in 1..=steps {
        let t = hi_max * i as f64 / steps as f64;
        let y = f.eval(t);
        if y >= 1.0 {
            hi = Some(t);
            break;
        }
        debug_assert!(y >= f.eval(lo) - 1e-12, "monotonicity violated in bracket scan");
        lo = t;
    }
    let mut hi = match hi {
        Some(h) => h,
        None => {
            // allow an exact hit at the scan boundary
            if (f.eval(hi_max) - 1.0).abs() <= tol {
                return Ok(hi_max);
            }
            return Err(AnalysisError::NoRootInRange);
        }
    };
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if f.eval(mid) < 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Radius of convergence of neck(f): exactly the positive root of f(t) = 1.
pub fn rc_necklace(f: &SeriesFn, tol: f64) -> Result<f64, AnalysisError> {
    root_of_unity_equation(f, tol)
}

/// Smallest positive real root of a polynomial on (0, bound], by sign
/// scan plus bisection.
fn smallest_positive_root(p: &Poly, bound: f64, tol: f64) -> Option<f64> {
    if p.degree() == 0 {
        return None;
    }
    let steps = 8192;
    let mut prev_t = 0.0f64;
    let mut prev_y = p.eval_f64(0.0);
    for i in 1..=steps {
        let t = bound * i as f64 / steps as f64;
        let y = p.eval_f64(t);
        if y == 0.0 {
            return Some(t);
        }
        if prev_y * y < 0.0 {
            let (mut lo, mut hi) = (prev_t, t);
            while hi - lo > tol {
                let mid = 0.5 * (lo + hi);
                if p.eval_f64(mid) * prev_y > 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            return Some(0.5 * (lo + hi));
        }
        prev_t = t;
        prev_y = y;
    }
    None
}

/// RC of a rational series: the smallest positive root of its (reduced)
/// denominator; None means the series is a polynomial (no singularity).
pub fn rc_of_rational(r: &RationalSeries, tol: f64) -> Option<f64> {
    smallest_positive_root(r.denominator(), 4.0, tol)
}

/// RC of the standard growth series via the amalgam decomposition at the
/// engine's pivot: the minimum of the factor RCs and the smallest positive
/// root of sigma_v + sigma_U - sigma_U sigma_v.
pub fn rc_sigma(g: &GraphSpec, tol: f64) -> Result<Option<f64>, AnalysisError> {
    let engine = GrowthEngine::new(g, 8);
    let s = g.full_set();
    if s.is_empty() {
        return Ok(None);
    }
    let whole = engine.sigma(s)?;
    let whole = whole.as_rational().ok_or(AnalysisError::BadSeries)?;
    if s.len() == 1 {
        return Ok(rc_of_rational(whole, tol));
    }
    let v = s
        .iter()
        .min_by_key(|&v| (g.degree_within(v, s), v))
        .unwrap();
    let lk = g.neighbours(v).intersect(s);
    let sigma_lk = engine.sigma(lk)?.as_rational().unwrap().clone();
    let sigma_rest = engine.sigma(s.remove(v))?.as_rational().unwrap().clone();
    let sigma_v = engine
        .sigma(crate::graph::VertexSubset::singleton(v))?
        .as_rational()
        .unwrap()
        .clone();
    let sigma_u = sigma_rest.div(&sigma_lk)?;
    let mut candidates: Vec<f64> = Vec::new();
    for r in [&sigma_lk, &sigma_u, &sigma_v] {
        if let Some(rc) = rc_of_rational(r, tol) {
            candidates.push(rc);
        }
    }
    // sigma_v + sigma_U - sigma_U sigma_v = 0 as a rational function:
    // roots of the reduced numerator away from denominator roots.
    let q = sigma_v.add(&sigma_u).sub(&sigma_u.mul(&sigma_v));
    if let Some(root) = smallest_positive_root(q.numerator(), 4.0, tol) {
        candidates.push(root);
    }
    Ok(candidates.into_iter().min_by(|a, b| a.partial_cmp(b).unwrap()))
}

/// Desk-scale limsup proxy: the windowed coefficient ratio root
/// (a_n / a_{n-window})^(1/window) at the highest usable n. This washes
/// out polynomial factors like 2^n/n that make the raw n-th root
/// converge too slowly at desk-scale degrees. A series whose last
/// `window` coefficients are all zero is reported as polynomial (rate 0).
pub fn estimate_rate(f: &TruncatedSeries, window: usize) -> RateEstimate {
    let cap = f.degree_cap();
    let window = window.max(1).min(cap);
    let lo = cap.saturating_sub(window - 1).max(1);
    if (lo..=cap).all(|n| f.coeff(n).is_zero()) {
        return RateEstimate { value: 0.0, degree_used: cap, method: RateMethod::CoefficientRoot };
    }
    for n in (window..=cap).rev() {
        let hi_c = f.coeff(n);
        let lo_c = f.coeff(n - window);
        if hi_c.is_zero() || lo_c.is_zero() {
            continue;
        }
        let ratio = bigint_to_f64(&hi_c) / bigint_to_f64(&lo_c);
        return RateEstimate {
            value: ratio.powf(1.0 / window as f64),
            degree_used: n,
            method: RateMethod::CoefficientRoot,
        };
    }
    // No usable ratio pair: fall back to the raw n-th root at the top
    // nonzero coefficient.
    let n = (1..=cap).rev().find(|&n| !f.coeff(n).is_zero()).unwrap_or(cap);
    RateEstimate {
        value: bigint_to_f64(&f.coeff(n)).powf(1.0 / n as f64),
        degree_used: n,
        method: RateMethod::CoefficientRoot,
    }
}

#[derive(Clone, Debug)]
pub struct RateReport {
    pub sigma_rate: RateEstimate,
    pub conj_rate: RateEstimate,
    pub difference: f64,
    /// Exact RC of sigma when the closed form is rational; None when the
    /// series is a polynomial (finite group).
    pub rc_sigma: Option<f64>,
    pub degree: usize,
}

/// Theorem-B style check: estimate the standard and conjugacy rates from
/// coefficients and report them next to the exact RC where available.
pub fn check_rate_equality(
    g: &GraphSpec,
    degree: usize,
    window: usize,
) -> Result<RateReport, AnalysisError> {
    let engine = GrowthEngine::new(g, degree);
    let sigma = engine.sigma(g.full_set())?.expand(degree)?;
    let conj = engine.sigma_conj(g.full_set())?;
    let sigma_rate = estimate_rate(&sigma, window);
    let conj_rate = estimate_rate(&conj, window);
    let rc = match engine.sigma(g.full_set())?.as_rational() {
        Some(r) => rc_of_rational(r, DEFAULT_TOL),
        None => None,
    };
    Ok(RateReport {
        sigma_rate,
        conj_rate,
        difference: (sigma_rate.value - conj_rate.value).abs(),
        rc_sigma: rc,
        degree,
    })
}
