//! Rational series: quotients of integer polynomials, kept gcd-reduced
//! with a positive denominator constant term. These are the exact closed
//! forms for standard growth series.

use crate::poly::Poly;
use crate::series::{SeriesError, TruncatedSeries};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalSeries {
    num: Poly,
    den: Poly,
}

impl RationalSeries {
    pub fn new(num: Poly, den: Poly) -> Result<Self, SeriesError> {
        if den.constant_term().is_zero() {
            return Err(SeriesError::ZeroConstantDenominator);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RationalSeries { num: Poly::zero(), den: Poly::one() };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        // Strip the common integer content.
        let c = num.content().gcd(&den.content());
        if !c.is_one() {
            num = num.div_content(&c);
            den = den.div_content(&c);
        }
        if den.constant_term().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        RationalSeries { num, den }
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalSeries { num: p, den: Poly::one() }
    }

    pub fn from_i64(num: &[i64], den: &[i64]) -> Result<Self, SeriesError> {
        RationalSeries::new(Poly::from_i64(num), Poly::from_i64(den))
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == 0
    }

    pub fn add(&self, other: &RationalSeries) -> RationalSeries {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        Self::reduced(num, self.den.mul(&other.den))
    }

    pub fn sub(&self, other: &RationalSeries) -> RationalSeries {
        let num = self.num.mul(&other.den).sub(&other.num.mul(&self.den));
        Self::reduced(num, self.den.mul(&other.den))
    }

    pub fn mul(&self, other: &RationalSeries) -> RationalSeries {
        Self::reduced(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn div(&self, other: &RationalSeries) -> Result<RationalSeries, SeriesError> {
        let num = self.num.mul(&other.den);
        let den = self.den.mul(&other.num);
        if den.constant_term().is_zero() {
            return Err(SeriesError::ZeroConstantDenominator);
        }
        Ok(Self::reduced(num, den))
    }

    /// Power-series expansion at 0 up to degree `cap`; every coefficient
    /// must come out an integer.
    pub fn expand(&self, cap: usize) -> Result<TruncatedSeries, SeriesError> {
        let b0 = self.den.constant_term();
        if b0.is_zero() {
            return Err(SeriesError::ZeroConstantDenominator);
        }
        let mut out: Vec<BigInt> = Vec::with_capacity(cap + 1);
        for n in 0..=cap {
            let mut acc = self.num.coeff(n);
            for j in 1..=n.min(self.den.degree()) {
                let bj = self.den.coeff(j);
                if !bj.is_zero() {
                    acc -= bj * &out[n - j];
                }
            }
            let (q, r) = acc.div_rem(&b0);
            if !r.is_zero() {
                return Err(SeriesError::NonIntegralExpansion(n));
            }
            out.push(q);
        }
        Ok(TruncatedSeries::new(out, cap))
    }
}

impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
