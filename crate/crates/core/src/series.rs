//! Exact arithmetic on truncated integer power series, the necklace
//! transform, and the Euler totient.
//!
//! A `TruncatedSeries` keeps coefficients of z^0..z^D and never reports
//! anything past its degree cap. The necklace transform accumulates in
//! exact rationals and asserts integrality of the result.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

/// Exact rational scratch values (totient weights phi(k)/(kl) inside the
/// necklace transform).
pub type ExactRational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("division by a series with zero constant term")]
    NonUnitDenominator,
    #[error("coefficient division is not exact at degree {0}")]
    NonIntegralQuotient(usize),
    #[error("necklace transform requires zero constant term")]
    NonzeroConstantTerm,
    #[error("necklace transform requires nonnegative coefficients")]
    NegativeCoefficient,
    #[error("necklace transform produced a non-integer coefficient at degree {0}")]
    NonIntegralResult(usize),
    #[error("rational series has zero constant term in its denominator")]
    ZeroConstantDenominator,
    #[error("power series expansion has a non-integer coefficient at degree {0}")]
    NonIntegralExpansion(usize),
}

/// Integer power series truncated at a fixed degree cap.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    /// Build from coefficients (index = degree), padded or cut to `cap`.
    pub fn new(mut coeffs: Vec<BigInt>, cap: usize) -> Self {
        coeffs.resize(cap + 1, BigInt::zero());
        TruncatedSeries { coeffs }
    }

    pub fn from_i64(coeffs: &[i64], cap: usize) -> Self {
        TruncatedSeries::new(coeffs.iter().map(|&c| BigInt::from(c)).collect(), cap)
    }

    pub fn zero(cap: usize) -> Self {
        TruncatedSeries { coeffs: vec![BigInt::zero(); cap + 1] }
    }

    pub fn one(cap: usize) -> Self {
        let mut s = Self::zero(cap);
        s.coeffs[0] = BigInt::one();
        s
    }

    pub fn monomial(deg: usize, cap: usize) -> Self {
        let mut s = Self::zero(cap);
        if deg <= cap {
            s.coeffs[deg] = BigInt::one();
        }
        s
    }

    pub fn degree_cap(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> BigInt {
        self.coeffs.get(n).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn constant_term(&self) -> &BigInt {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Lowest degree with a nonzero coefficient, if any.
    pub fn min_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, cap: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(cap + 1, BigInt::zero());
        TruncatedSeries { coeffs }
    }

    pub fn add(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let cap = self.degree_cap().min(other.degree_cap());
        let mut out = Vec::with_capacity(cap + 1);
        for i in 0..=cap {
            out.push(&self.coeffs[i] + &other.coeffs[i]);
        }
        TruncatedSeries { coeffs: out }
    }

    pub fn sub(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let cap = self.degree_cap().min(other.degree_cap());
        let mut out = Vec::with_capacity(cap + 1);
        for i in 0..=cap {
            out.push(&self.coeffs[i] - &other.coeffs[i]);
        }
        TruncatedSeries { coeffs: out }
    }

    /// Cauchy product truncated at the smaller cap.
    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let cap = self.degree_cap().min(other.degree_cap());
        let mut out = vec![BigInt::zero(); cap + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(cap + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(cap + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        TruncatedSeries { coeffs: out }
    }

    /// Series quotient: the result c satisfies other * c = self up to the cap.
    ///
    /// Every coefficient recurrence step must divide exactly by the
    /// denominator's constant term; growth series always have constant
    /// term 1, so in practice this never fails on formula inputs.
    pub fn div(&self, other: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
        let cap = self.degree_cap().min(other.degree_cap());
        let b0 = &other.coeffs[0];
        if b0.is_zero() {
            return Err(SeriesError::NonUnitDenominator);
        }
        let mut out: Vec<BigInt> = Vec::with_capacity(cap + 1);
        for n in 0..=cap {
            let mut acc = self.coeffs[n].clone();
            for j in 1..=n {
                if !other.coeffs[j].is_zero() {
                    acc -= &other.coeffs[j] * &out[n - j];
                }
            }
            let (q, r) = num_integer::div_rem(acc, b0.clone());
            if !r.is_zero() {
                return Err(SeriesError::NonIntegralQuotient(n));
            }
            out.push(q);
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// Returns f(z^k) at the same cap.
    pub fn substitute_power(&self, k: usize) -> TruncatedSeries {
        assert!(k >= 1, "substitute_power requires k >= 1");
        if k == 1 {
            return self.clone();
        }
        let cap = self.degree_cap();
        let mut out = vec![BigInt::zero(); cap + 1];
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match n.checked_mul(k) {
                Some(m) if m <= cap => out[m] = c.clone(),
                _ => break,
            }
        }
        TruncatedSeries { coeffs: out }
    }

    pub fn scale(&self, c: &BigInt) -> TruncatedSeries {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn has_negative_coeff(&self) -> bool {
        self.coeffs.iter().any(|c| c.is_negative())
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", strs.join(", "))
    }
}

/// Euler totient by trial division.
pub fn euler_phi(k: u64) -> u64 {
    assert!(k >= 1);
    let mut n = k;
    let mut result = k;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Necklace transform: sum over k,l >= 1 of phi(k)/(kl) * f(z^k)^l.
///
/// Requires f(0) = 0 (the sum is nowhere defined otherwise) and
/// nonnegative coefficients. Since the lowest degree of f(z^k)^l is at
/// least kl, only finitely many terms touch the cap.
pub fn neck(f: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
    if !f.constant_term().is_zero() {
        return Err(SeriesError::NonzeroConstantTerm);
    }
    if f.has_negative_coeff() {
        return Err(SeriesError::NegativeCoefficient);
    }
    let cap = f.degree_cap();
    let mut acc = vec![ExactRational::zero(); cap + 1];
    if f.is_zero() {
        return Ok(TruncatedSeries::zero(cap));
    }
    let min_deg = f.min_degree().unwrap();
    for k in 1..=cap {
        if k * min_deg > cap {
            break;
        }
        let fk = f.substitute_power(k);
        if fk.is_zero() {
            continue;
        }
        let phi = BigInt::from(euler_phi(k as u64));
        let mut power = fk.clone();
        let mut l = 1usize;
        loop {
            if power.is_zero() {
                break;
            }
            let weight = ExactRational::new(phi.clone(), BigInt::from(k * l));
            for (n, c) in power.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    acc[n] += &weight * BigRational::from_integer(c.clone());
                }
            }
            l += 1;
            if k * l * min_deg > cap {
                break;
            }
            power = power.mul(&fk);
        }
    }
    let mut out = Vec::with_capacity(cap + 1);
    for (n, q) in acc.into_iter().enumerate() {
        if !q.is_integer() {
            return Err(SeriesError::NonIntegralResult(n));
        }
        out.push(q.to_integer());
    }
    Ok(TruncatedSeries { coeffs: out })
}
