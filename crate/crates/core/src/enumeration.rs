//! Closed forms and generating functions for avoider counts, and a registry
//! that says which of them apply to a given pattern.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::avoidance::count_avoiders;
use crate::numbers::{
    big, binomial, factorial, falling, m_count, perfect_matchings, stirling2, BigCount,
};
use crate::partition::SetPartition;
use crate::series::{BivariateSeries, PolyT, PowerSeries, SeriesError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("method {method} is not available for pattern {pattern}")]
    MethodUnavailable { pattern: String, method: Method },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// How a count is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    /// Exhaustive scan of all partitions of `[n]`.
    Oracle,
    /// Closed-form sum or recurrence.
    Formula,
    /// Coefficient extraction from an exact generating function.
    Gf,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Oracle, Method::Formula, Method::Gf];
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Oracle => "oracle",
            Method::Formula => "formula",
            Method::Gf => "gf",
        })
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "oracle" => Ok(Method::Oracle),
            "formula" => Ok(Method::Formula),
            "gf" => Ok(Method::Gf),
            other => Err(format!("unknown method {other:?}")),
        }
    }
}

fn q(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Partitions of `[n]` whose blocks all have fewer than `k` elements
/// (avoiders of the one-block pattern of `[k]`).
pub fn count_beta_k(n: usize, k: usize) -> BigCount {
    assert!(k >= 2, "need k >= 2");
    let mut c: Vec<BigCount> = vec![big(1)];
    for m in 1..=n {
        let v = (1..=(k - 1).min(m))
            .map(|j| binomial(m - 1, j - 1) * &c[m - j])
            .sum();
        c.push(v);
    }
    c[n].clone()
}

/// Partitions of `[n]` with at most `k - 1` blocks (avoiders of `1/2/.../k`).
pub fn count_sigma_k(n: usize, k: usize) -> BigCount {
    assert!(k >= 2, "need k >= 2");
    (0..k).map(|j| stirling2(n, j)).sum()
}

/// Avoiders of `12/34`: blocks of size at most two, plus at most one larger block.
pub fn count_12_34(n: usize) -> BigCount {
    let mut total = BigCount::zero();
    for k in 0..=n / 2 {
        let kf = factorial(k);
        total += &kf * binomial(n, 2 * k);
        for l in 3..=n - 2 * k {
            total += binomial(n, 2 * k + l) * &kf * ((k + 1) * (k + 1));
        }
    }
    total
}

/// Avoiders of `1/234`, summed over the three possible shapes of the first block.
pub fn count_1_234(n: usize) -> BigCount {
    if n == 0 {
        return big(1);
    }
    let mut total = BigCount::zero();
    for l in 1..=n {
        total += m_count(n - l);
    }
    for l in 1..=n.saturating_sub(2) {
        total += (n - l - 1) * m_count(n - l - 1);
    }
    for l in 1..=n.saturating_sub(3) {
        total += binomial(n - l - 1, 2) * m_count(n - l - 2);
    }
    total
}

/// Avoiders of `134/2`, by number of non-singleton blocks `k` and singletons `f`.
pub fn count_134_2(n: usize) -> BigCount {
    let mut total = big(1);
    for k in 1..=n / 2 {
        for f in 0..=n - 2 * k {
            total += binomial(n - f - k - 1, k - 1) * binomial(2 * k + f, f) * perfect_matchings(k);
        }
    }
    total
}

/// Avoiders of `12/3/4/.../m` for `m >= 3`.
pub fn count_12_3_to_m(n: usize, m: usize) -> BigCount {
    assert!(m >= 3, "pattern 12/3/.../m needs m >= 3");
    let mut total = big(1);
    for k in 1..n {
        for j in 1..=m - 2 {
            let s = stirling2(n - k, j);
            if s.is_zero() {
                continue;
            }
            let inner: BigCount = (1..=j)
                .map(|i| binomial(j - 1, i - 1) * falling(k, i))
                .sum();
            total += s * inner;
        }
    }
    total
}

pub fn count_12_3_4(n: usize) -> BigCount {
    count_12_3_to_m(n, 4)
}

fn poly_series(coeffs: &[i64], order: usize) -> PowerSeries {
    PowerSeries::from_ints(coeffs, order)
}

/// Coefficients `0..=N` of `numerator / denominator` for integer polynomials
/// (constant term first).
pub fn gf_coeffs_rational(
    numerator: &[i64],
    denominator: &[i64],
    order: usize,
) -> Result<Vec<BigCount>, SeriesError> {
    let num = poly_series(numerator, order);
    let den = poly_series(denominator, order);
    num.div(&den)?.to_counts()
}

pub const NUM_14_2_3: [i64; 4] = [0, 1, -3, 3];
pub const DEN_14_2_3: [i64; 4] = [1, -5, 8, -5];
pub const NUM_1_24_3: [i64; 5] = [0, 1, -4, 6, -2];
pub const DEN_1_24_3: [i64; 5] = [1, -6, 13, -12, 4];

pub fn gf_14_2_3(order: usize) -> Result<Vec<BigCount>, SeriesError> {
    gf_coeffs_rational(&NUM_14_2_3, &DEN_14_2_3, order)
}

pub fn gf_1_24_3(order: usize) -> Result<Vec<BigCount>, SeriesError> {
    gf_coeffs_rational(&NUM_1_24_3, &DEN_1_24_3, order)
}

/// `(1 - sqrt(1 - 4z)) / 2z`.
pub fn gf_coeffs_13_24(order: usize) -> Result<Vec<BigCount>, SeriesError> {
    let m = order + 1;
    let root = poly_series(&[1, -4], m).sqrt()?;
    let top = PowerSeries::one(m).sub(&root);
    top.div_z_power(1)?
        .scale(&BigRational::new(BigInt::one(), BigInt::from(2)))
        .to_counts()
}

/// `G(z) = (z - 2z^2(1+z) - z sqrt(1-4z^2)) / (-2 + 2z(1+z)^2)`, the series of
/// singleton-free `14/23`-avoiders.
pub fn g_series(order: usize) -> Result<PowerSeries, SeriesError> {
    let z = PowerSeries::z(order);
    let root = poly_series(&[1, 0, -4], order).sqrt()?;
    let num = poly_series(&[0, 1, -2, -2], order).sub(&z.mul(&root));
    let den = poly_series(&[-2, 2, 4, 2], order);
    num.div(&den)
}

/// `G(z/(1-z)) / (1-z) + 1/(1-z)`.
pub fn gf_coeffs_14_23(order: usize) -> Result<Vec<BigCount>, SeriesError> {
    let m = order + 2;
    let one_minus_z = poly_series(&[1, -1], m);
    let inner = PowerSeries::z(m).div(&one_minus_z)?;
    let g = g_series(m)?.compose(&inner)?;
    let f = g.add(&PowerSeries::one(m)).div(&one_minus_z)?;
    f.truncate(order).to_counts()
}

/// Solves `H = z^2 t + z t H(z,1) + (z^2 t / (1-t)) (H(z,1) - t H(z,t))`
/// order by order in `z`, where `[z^n t^i] H` counts singleton-free
/// `14/23`-avoiders of `[n]` with `i` caps.
pub fn h_series_check(order: usize) -> Result<BivariateSeries, SeriesError> {
    let one = q(1);
    let mut h: Vec<PolyT> = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let mut p = PolyT::default();
        if n == 2 {
            p = p.add(&PolyT::from_ints(&[0, 1]));
        }
        if n >= 1 {
            let prev = PolyT::from_coeffs(vec![h[n - 1].eval_one()]);
            p = p.add(&prev.shift_scale(&one, 1));
        }
        if n >= 2 {
            let at_one = PolyT::from_coeffs(vec![h[n - 2].eval_one()]);
            let diff = at_one.sub(&h[n - 2].shift_scale(&one, 1));
            p = p.add(&diff.div_one_minus_t()?.shift_scale(&one, 1));
        }
        h.push(p);
    }
    Ok(BivariateSeries::from_coeffs(h))
}

/// `n! [z^n] exp(exp_{k-1}(z) - 1)` for `n = 0..=N`.
pub fn egf_beta_k(k: usize, order: usize) -> Result<Vec<BigCount>, SeriesError> {
    let inner = PowerSeries::exp_partial(k - 1, order).sub(&PowerSeries::one(order));
    egf_to_counts(&inner.exp()?)
}

/// `n! [z^n] exp_{k-1}(e^z - 1)` for `n = 0..=N`.
pub fn egf_sigma_k(k: usize, order: usize) -> Result<Vec<BigCount>, SeriesError> {
    let inner = PowerSeries::exp_z(order).sub(&PowerSeries::one(order));
    egf_to_counts(&PowerSeries::exp_partial(k - 1, order).compose(&inner)?)
}

fn egf_to_counts(s: &PowerSeries) -> Result<Vec<BigCount>, SeriesError> {
    let scaled = PowerSeries::from_coeffs(
        s.coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| c * BigRational::from_integer(BigInt::from(factorial(i)))),
        s.order(),
    );
    scaled.to_counts()
}

/// The closed forms known for a pattern, up to complementation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    OneBlock(usize),
    Singletons(usize),
    TwoThreeToM(usize),
    P12_34,
    P1_234,
    P134_2,
    P14_23,
    P13_24,
    P14_2_3,
    P1_24_3,
}

impl Family {
    pub fn of(tau: &SetPartition) -> Option<Family> {
        Self::direct(tau).or_else(|| Self::direct(&tau.complement()))
    }

    fn direct(tau: &SetPartition) -> Option<Family> {
        let k = tau.n();
        if k >= 2 && tau.block_count() == 1 {
            return Some(Family::OneBlock(k));
        }
        if k >= 2 && tau.block_count() == k {
            return Some(Family::Singletons(k));
        }
        if k >= 3 && tau.blocks()[0] == [1, 2] && tau.blocks()[1..].iter().all(|b| b.len() == 1) {
            return Some(Family::TwoThreeToM(k));
        }
        let fam = match tau.to_compact_string().as_str() {
            "12/34" => Family::P12_34,
            "1/234" => Family::P1_234,
            "134/2" => Family::P134_2,
            "14/23" => Family::P14_23,
            "13/24" => Family::P13_24,
            "14/2/3" => Family::P14_2_3,
            "1/24/3" => Family::P1_24_3,
            _ => return None,
        };
        (k == 4).then_some(fam)
    }

    pub fn has(&self, method: Method) -> bool {
        match method {
            Method::Oracle => true,
            Method::Formula => !matches!(self, Family::P14_23 | Family::P14_2_3 | Family::P1_24_3),
            Method::Gf => matches!(
                self,
                Family::OneBlock(_)
                    | Family::Singletons(_)
                    | Family::P14_23
                    | Family::P13_24
                    | Family::P14_2_3
                    | Family::P1_24_3
            ),
        }
    }

    fn formula(&self, n: usize) -> BigCount {
        match *self {
            Family::OneBlock(k) => count_beta_k(n, k),
            Family::Singletons(k) => count_sigma_k(n, k),
            Family::TwoThreeToM(m) => count_12_3_to_m(n, m),
            Family::P12_34 => count_12_34(n),
            Family::P1_234 => count_1_234(n),
            Family::P134_2 => count_134_2(n),
            Family::P13_24 => crate::numbers::catalan(n),
            Family::P14_23 | Family::P14_2_3 | Family::P1_24_3 => {
                unreachable!("no closed form registered")
            }
        }
    }

    fn gf(&self, order: usize) -> Result<Vec<BigCount>, SeriesError> {
        match *self {
            Family::OneBlock(k) => egf_beta_k(k, order),
            Family::Singletons(k) => egf_sigma_k(k, order),
            Family::P14_23 => gf_coeffs_14_23(order),
            Family::P13_24 => gf_coeffs_13_24(order),
            Family::P14_2_3 => gf_14_2_3(order),
            Family::P1_24_3 => gf_1_24_3(order),
            _ => unreachable!("no generating function registered"),
        }
    }
}

/// Methods that can count avoiders of `tau`; the oracle always applies.
pub fn available_methods(tau: &SetPartition) -> Vec<Method> {
    match Family::of(tau) {
        Some(f) => Method::ALL.into_iter().filter(|&m| f.has(m)).collect(),
        None => vec![Method::Oracle],
    }
}

/// `|Pi_n(tau)|` for `n = 0..=n_max` by the given method. Every method
/// reports `1` at `n = 0`.
pub fn counts_by(
    tau: &SetPartition,
    n_max: usize,
    method: Method,
    shards: usize,
) -> Result<Vec<BigCount>, EnumError> {
    let unavailable = || EnumError::MethodUnavailable {
        pattern: tau.to_string(),
        method,
    };
    let mut out = match method {
        Method::Oracle => (0..=n_max)
            .map(|n| count_avoiders(n, tau, shards))
            .collect(),
        Method::Formula => {
            let f = Family::of(tau)
                .filter(|f| f.has(method))
                .ok_or_else(unavailable)?;
            (0..=n_max).map(|n| f.formula(n)).collect()
        }
        Method::Gf => {
            let f = Family::of(tau)
                .filter(|f| f.has(method))
                .ok_or_else(unavailable)?;
            f.gf(n_max)?
        }
    };
    out[0] = big(1);
    Ok(out)
}

pub fn count_by(
    tau: &SetPartition,
    n: usize,
    method: Method,
    shards: usize,
) -> Result<BigCount, EnumError> {
    if method == Method::Oracle {
        return Ok(if n == 0 {
            big(1)
        } else {
            count_avoiders(n, tau, shards)
        });
    }
    Ok(counts_by(tau, n, method, shards)?
        .pop()
        .expect("n_max + 1 entries"))
}

/// The patterns of `[4]` that carry a closed form or generating function.
pub fn table_patterns() -> Vec<SetPartition> {
    [
        "1234", "1/2/3/4", "12/3/4", "12/34", "1/234", "134/2", "14/23", "13/24", "14/2/3",
        "1/24/3",
    ]
    .iter()
    .map(|s| s.parse().expect("valid pattern"))
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::avoidance::count_avoiders_u64;
    use crate::bijections::generate_14_23_core;
    use crate::numbers::bell;

    fn p(s: &str) -> SetPartition {
        s.parse().unwrap()
    }

    fn ints(v: &[BigCount]) -> Vec<u64> {
        v.iter().map(|x| x.try_into().unwrap()).collect()
    }

    #[test]
    fn one_block_and_singletons() {
        assert_eq!(count_beta_k(4, 4), big(14));
        assert_eq!(count_beta_k(5, 4), big(46));
        assert_eq!(count_beta_k(3, 2), big(1));
        assert_eq!(count_sigma_k(5, 4), big(41));
        assert_eq!(count_sigma_k(5, 2), big(1));
        for n in 1..=12 {
            assert_eq!(count_sigma_k(n, 3), big(1 << (n - 1)));
        }
    }

    #[test]
    fn egf_matches_recurrences() {
        for k in 2..=6 {
            let b = egf_beta_k(k, 14).unwrap();
            let s = egf_sigma_k(k, 14).unwrap();
            for n in 0..=14 {
                assert_eq!(b[n], count_beta_k(n, k));
                assert_eq!(s[n], count_sigma_k(n, k));
            }
        }
    }

    #[test]
    fn sigma_below_beta() {
        for k in 2..=7 {
            for n in 0..=14 {
                let (s, b) = (count_sigma_k(n, k), count_beta_k(n, k));
                if n > k && k > 2 {
                    assert!(s < b, "k = {k}, n = {n}");
                } else {
                    assert!(s <= b, "k = {k}, n = {n}");
                }
            }
        }
    }

    #[test]
    fn closed_forms_at_four() {
        for f in [count_12_34, count_1_234, count_134_2, count_12_3_4] {
            assert_eq!(f(4), big(14));
        }
        assert_eq!(count_12_34(2), big(2));
        assert_eq!(count_1_234(1), big(1));
        assert_eq!(count_134_2(2), big(2));
        assert_eq!(count_12_3_4(2), big(2));
        for n in 1..=12 {
            assert_eq!(count_12_3_to_m(n, 3), big(1) + binomial(n, 2));
        }
    }

    #[test]
    fn closed_forms_match_oracle() {
        type Formula = fn(usize) -> BigCount;
        let cases: [(&str, Formula); 4] = [
            ("12/34", count_12_34),
            ("1/234", count_1_234),
            ("134/2", count_134_2),
            ("12/3/4", count_12_3_4),
        ];
        for (pat, f) in cases {
            for n in 1..=8 {
                assert_eq!(
                    f(n),
                    big(count_avoiders_u64(n, &p(pat), 2)),
                    "{pat} n = {n}"
                );
            }
        }
        for n in 1..=8 {
            assert_eq!(
                count_12_3_to_m(n, 5),
                big(count_avoiders_u64(n, &p("12/3/4/5"), 2))
            );
        }
    }

    #[test]
    fn rational_gfs() {
        assert_eq!(ints(&gf_14_2_3(5).unwrap()), vec![0, 1, 2, 5, 14, 40]);
        assert_eq!(gf_1_24_3(5).unwrap()[5], big(39));
        let a = gf_14_2_3(4).unwrap();
        let b = gf_1_24_3(4).unwrap();
        for n in 1..=4 {
            let want = bell(n) - big(u64::from(n == 4));
            assert_eq!(a[n], want);
            assert_eq!(b[n], want);
        }
        assert!(matches!(
            gf_coeffs_rational(&[1], &[2], 2),
            Err(SeriesError::NonIntegralCoefficient { index: 0, .. })
        ));
    }

    #[test]
    fn algebraic_gfs() {
        let c = gf_coeffs_13_24(10).unwrap();
        assert_eq!(
            ints(&c),
            vec![1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796]
        );
        let g = g_series(6).unwrap().to_counts().unwrap();
        assert_eq!(ints(&g[2..=4]), vec![1, 1, 3]);
        let f = gf_coeffs_14_23(8).unwrap();
        assert_eq!(f[4], big(14));
        assert_eq!(f[8], big(count_avoiders_u64(8, &p("14/23"), 2)));
    }

    #[test]
    fn cap_series() {
        let h = h_series_check(10).unwrap();
        assert_eq!(h.coeff(2), &PolyT::from_ints(&[0, 1]));
        let g = g_series(10).unwrap();
        assert_eq!(h.at_t_one(), g);
        let mut want = vec![0i64; 5];
        for c in generate_14_23_core(4) {
            want[c.caps()] += 1;
        }
        assert_eq!(h.coeff(4), &PolyT::from_ints(&want));
    }

    #[test]
    fn registry() {
        assert_eq!(available_methods(&p("1/23/4")), vec![Method::Oracle]);
        assert_eq!(
            available_methods(&p("13/2/4")),
            vec![Method::Oracle, Method::Gf]
        );
        assert_eq!(
            available_methods(&p("123/4")),
            vec![Method::Oracle, Method::Formula]
        );
        assert!(matches!(
            count_by(&p("1/23/4"), 5, Method::Gf, 1),
            Err(EnumError::MethodUnavailable { .. })
        ));
        for tau in table_patterns() {
            for m in available_methods(&tau) {
                assert_eq!(count_by(&tau, 4, m, 1).unwrap(), big(14), "{tau} {m}");
            }
        }
    }
}
