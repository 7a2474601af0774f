//! Truncated formal power series with exact rational coefficients, and
//! series in `z` whose coefficients are polynomials in a second variable `t`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("divisor has zero constant term")]
    DivByZeroConstant,
    #[error("square root needs constant term 1")]
    SqrtNonUnit,
    #[error("exponential needs constant term 0")]
    ExpNonzeroConstant,
    #[error("inner series of a composition must have zero constant term")]
    ComposeNonzeroConstant,
    #[error("coefficient of z^{index} is not an integer: {value}")]
    NonIntegralCoefficient { index: usize, value: String },
    #[error("coefficient of z^{index} is negative: {value}")]
    NegativeCoefficient { index: usize, value: String },
    #[error("inexact division: {0}")]
    InexactDivision(String),
}

/// `sum_{i=0}^{N} c_i z^i`; every operation stays within order `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<BigRational>,
}

fn q(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

impl PowerSeries {
    pub fn zero(order: usize) -> Self {
        PowerSeries {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(q(1), order)
    }

    pub fn constant(c: BigRational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The series `z`.
    pub fn z(order: usize) -> Self {
        Self::monomial(q(1), 1, order)
    }

    pub fn monomial(c: BigRational, power: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = c;
        }
        s
    }

    /// From a polynomial given constant term first; terms above `order` are dropped.
    pub fn from_coeffs<I: IntoIterator<Item = BigRational>>(coeffs: I, order: usize) -> Self {
        let mut s = Self::zero(order);
        for (i, c) in coeffs.into_iter().enumerate().take(order + 1) {
            s.coeffs[i] = c;
        }
        s
    }

    pub fn from_ints(coeffs: &[i64], order: usize) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| q(c)), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &BigRational {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().cloned(), order)
    }

    fn common_order(&self, other: &Self) -> usize {
        self.order().min(other.order())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.common_order(other);
        PowerSeries {
            coeffs: (0..=n)
                .map(|i| &self.coeffs[i] + &other.coeffs[i])
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.common_order(other);
        PowerSeries {
            coeffs: (0..=n)
                .map(|i| &self.coeffs[i] - &other.coeffs[i])
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.common_order(other);
        let mut out = vec![BigRational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] += a * b;
            }
        }
        PowerSeries { coeffs: out }
    }

    pub fn div(&self, divisor: &Self) -> Result<Self, SeriesError> {
        let n = self.common_order(divisor);
        let d0 = &divisor.coeffs[0];
        if d0.is_zero() {
            return Err(SeriesError::DivByZeroConstant);
        }
        let mut out: Vec<BigRational> = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let mut acc = self.coeffs[i].clone();
            for j in 1..=i {
                acc -= &divisor.coeffs[j] * &out[i - j];
            }
            out.push(acc / d0);
        }
        Ok(PowerSeries { coeffs: out })
    }

    /// Divides by `z^power`; the dropped low coefficients must vanish. The
    /// result has order `N - power`.
    pub fn div_z_power(&self, power: usize) -> Result<Self, SeriesError> {
        if power > self.order() {
            return Err(SeriesError::InexactDivision(format!(
                "cannot divide an order-{} series by z^{power}",
                self.order()
            )));
        }
        if let Some(i) = (0..power).find(|&i| !self.coeffs[i].is_zero()) {
            return Err(SeriesError::InexactDivision(format!(
                "coefficient of z^{i} is nonzero"
            )));
        }
        Ok(PowerSeries {
            coeffs: self.coeffs[power..].to_vec(),
        })
    }

    /// `f(g(z))` by Horner's rule; requires `g(0) = 0`.
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        if !inner.coeffs[0].is_zero() {
            return Err(SeriesError::ComposeNonzeroConstant);
        }
        let n = self.common_order(inner);
        let inner = inner.truncate(n);
        let mut acc = Self::constant(self.coeffs[n].clone(), n);
        for i in (0..n).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] += &self.coeffs[i];
        }
        Ok(acc)
    }

    /// `sqrt(f)` for `f(0) = 1`, as the binomial series `sum_j C(1/2, j) (f - 1)^j`.
    pub fn sqrt(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::SqrtNonUnit);
        }
        let n = self.order();
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let mut binom = Vec::with_capacity(n + 1);
        let mut c = q(1);
        for j in 0..=n {
            binom.push(c.clone());
            c = c * (&half - q(j as i64)) / q(j as i64 + 1);
        }
        let outer = PowerSeries { coeffs: binom };
        let mut inner = self.clone();
        inner.coeffs[0] = BigRational::zero();
        outer.compose(&inner)
    }

    /// `exp(f)` for `f(0) = 0`, via `e' = f' e`.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::ExpNonzeroConstant);
        }
        let n = self.order();
        let mut e: Vec<BigRational> = vec![q(1)];
        for m in 1..=n {
            let mut acc = BigRational::zero();
            for i in 1..=m {
                acc += q(i as i64) * &self.coeffs[i] * &e[m - i];
            }
            e.push(acc / q(m as i64));
        }
        Ok(PowerSeries { coeffs: e })
    }

    /// `exp(z)` truncated to order `N`.
    pub fn exp_z(order: usize) -> Self {
        Self::exp_partial(order, order)
    }

    /// `sum_{i=0}^{m} z^i / i!`.
    pub fn exp_partial(m: usize, order: usize) -> Self {
        let mut fact = BigInt::one();
        let mut coeffs = Vec::new();
        for i in 0..=m.min(order) {
            if i > 0 {
                fact *= i;
            }
            coeffs.push(BigRational::new(BigInt::one(), fact.clone()));
        }
        Self::from_coeffs(coeffs, order)
    }

    /// Coefficients as nonnegative integers, erroring on any that is not.
    pub fn to_counts(&self) -> Result<Vec<BigUint>, SeriesError> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| rational_to_count(i, c))
            .collect()
    }
}

pub(crate) fn rational_to_count(index: usize, c: &BigRational) -> Result<BigUint, SeriesError> {
    if !c.is_integer() {
        return Err(SeriesError::NonIntegralCoefficient {
            index,
            value: c.to_string(),
        });
    }
    if c.is_negative() {
        return Err(SeriesError::NegativeCoefficient {
            index,
            value: c.to_string(),
        });
    }
    Ok(c.to_integer().to_biguint().expect("nonnegative integer"))
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            writeln!(f, "{i}: {c}")?;
        }
        Ok(())
    }
}

/// A polynomial in `t` with rational coefficients, constant term first.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PolyT {
    coeffs: Vec<BigRational>,
}

impl PolyT {
    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        let mut p = PolyT { coeffs };
        p.normalize();
        p
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| q(c)).collect())
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn eval_one(&self) -> BigRational {
        self.coeffs.iter().sum()
    }

    pub fn add(&self, other: &PolyT) -> PolyT {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..len).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &PolyT) -> PolyT {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..len).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    /// Multiplies by `c t^shift`.
    pub fn shift_scale(&self, c: &BigRational, shift: usize) -> PolyT {
        let mut coeffs = vec![BigRational::zero(); shift];
        coeffs.extend(self.coeffs.iter().map(|x| x * c));
        Self::from_coeffs(coeffs)
    }

    /// Exact quotient by `1 - t`; fails unless the polynomial vanishes at `t = 1`.
    pub fn div_one_minus_t(&self) -> Result<PolyT, SeriesError> {
        if !self.eval_one().is_zero() {
            return Err(SeriesError::InexactDivision(
                "numerator does not vanish at t = 1".into(),
            ));
        }
        // p(t) = (1 - t) r(t): r_0 = p_0, r_i = p_i + r_{i-1}
        let d = match self.degree() {
            None => return Ok(PolyT::default()),
            Some(d) => d,
        };
        let mut r = Vec::with_capacity(d);
        let mut acc = BigRational::zero();
        for i in 0..d {
            acc += &self.coeffs[i];
            r.push(acc.clone());
        }
        Ok(Self::from_coeffs(r))
    }
}

impl fmt::Display for PolyT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 => format!("{c}t"),
                _ => format!("{c}t^{i}"),
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

/// `sum_{n=0}^{N} p_n(t) z^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivariateSeries {
    coeffs: Vec<PolyT>,
}

impl BivariateSeries {
    pub fn from_coeffs(coeffs: Vec<PolyT>) -> Self {
        BivariateSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, n: usize) -> &PolyT {
        &self.coeffs[n]
    }

    /// The univariate series at `t = 1`.
    pub fn at_t_one(&self) -> PowerSeries {
        PowerSeries::from_coeffs(self.coeffs.iter().map(PolyT::eval_one), self.order())
    }
}

/// Small-integer view for display and tests.
pub fn as_i64(c: &BigRational) -> Option<i64> {
    if c.is_integer() {
        c.to_integer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(s: &PowerSeries) -> Vec<i64> {
        s.coeffs().iter().map(|c| as_i64(c).unwrap()).collect()
    }

    #[test]
    fn sqrt_of_one_minus_4z() {
        let f = PowerSeries::from_ints(&[1, -4], 3);
        let s = f.sqrt().unwrap();
        assert_eq!(ints(&s), vec![1, -2, -2, -4]);
        assert_eq!(s.mul(&s), f);
    }

    #[test]
    fn compose_geometric_shift() {
        // z/(1-z) composed with z is itself; 1/(1-w) at w = z/(1-z) is (1-z)/(1-2z)
        let n = 8;
        let z = PowerSeries::z(n);
        let one = PowerSeries::one(n);
        let g = z.div(&one.sub(&z)).unwrap();
        assert_eq!(g.compose(&z).unwrap(), g);
        let geo = one.div(&one.sub(&z)).unwrap();
        let lhs = geo.compose(&g).unwrap();
        let rhs = one
            .sub(&z)
            .div(&PowerSeries::from_ints(&[1, -2], n))
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn errors() {
        let f = PowerSeries::from_ints(&[0, 1], 4);
        assert_eq!(f.div(&f), Err(SeriesError::DivByZeroConstant));
        assert_eq!(
            PowerSeries::from_ints(&[2, 1], 4).sqrt(),
            Err(SeriesError::SqrtNonUnit)
        );
        assert_eq!(
            f.compose(&PowerSeries::from_ints(&[1, 1], 4)),
            Err(SeriesError::ComposeNonzeroConstant)
        );
        assert!(PowerSeries::from_ints(&[1, 2], 3).div_z_power(1).is_err());
    }

    #[test]
    fn exp_of_z_has_factorial_denominators() {
        let e = PowerSeries::z(6).exp().unwrap();
        assert_eq!(e, PowerSeries::exp_z(6));
        assert_eq!(
            e.coeff(4),
            &BigRational::new(BigInt::from(1), BigInt::from(24))
        );
    }

    #[test]
    fn poly_division_by_one_minus_t() {
        let p = PolyT::from_ints(&[1, 0, -1]);
        assert_eq!(p.div_one_minus_t().unwrap(), PolyT::from_ints(&[1, 1]));
        assert!(PolyT::from_ints(&[1, 1]).div_one_minus_t().is_err());
    }

    proptest! {
        #[test]
        fn reciprocal_is_inverse(tail in proptest::collection::vec(-20i64..20, 1..8), c0 in prop_oneof![1i64..6, -6i64..-1]) {
            let mut coeffs = vec![c0];
            coeffs.extend(tail);
            let n = 7;
            let f = PowerSeries::from_ints(&coeffs, n);
            let inv = PowerSeries::one(n).div(&f).unwrap();
            prop_assert_eq!(f.mul(&inv), PowerSeries::one(n));
        }

        #[test]
        fn sqrt_squares_back(tail in proptest::collection::vec(-9i64..9, 1..7)) {
            let mut coeffs = vec![1];
            coeffs.extend(tail);
            let f = PowerSeries::from_ints(&coeffs, 6);
            let s = f.sqrt().unwrap();
            prop_assert_eq!(s.mul(&s), f);
        }
    }
}
