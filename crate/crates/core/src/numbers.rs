//! Exact combinatorial numbers. Every count is a [`BigCount`].

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Arbitrary-precision nonnegative count.
pub type BigCount = BigUint;

pub fn big(x: u64) -> BigCount {
    BigUint::from(x)
}

pub fn factorial(n: usize) -> BigCount {
    (1..=n as u64).fold(BigUint::one(), |acc, i| acc * i)
}

/// `C(n, k)`; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigCount {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `C(n, k)` for a possibly negative upper index, zero outside `0 <= k <= n`.
pub fn binomial_signed(n: i64, k: i64) -> BigCount {
    if n < 0 || k < 0 || k > n {
        BigUint::zero()
    } else {
        binomial(n as usize, k as usize)
    }
}

/// `m!! = m (m-2) (m-4) ...`, with `0!! = 1`.
pub fn double_factorial(m: usize) -> BigCount {
    (1..=m as u64)
        .rev()
        .step_by(2)
        .fold(BigUint::one(), |acc, i| acc * i)
}

/// Number of perfect matchings on `2k` points, `(2k-1)!!`.
pub fn perfect_matchings(k: usize) -> BigCount {
    if k == 0 {
        BigUint::one()
    } else {
        double_factorial(2 * k - 1)
    }
}

/// Falling factorial `(k)_i = k (k-1) ... (k-i+1)`.
pub fn falling(k: usize, i: usize) -> BigCount {
    if i > k {
        return BigUint::zero();
    }
    (0..i).fold(BigUint::one(), |acc, j| acc * (k - j))
}

/// Stirling numbers of the second kind via the triangle `S(n,k) = k S(n-1,k) + S(n-1,k-1)`.
pub fn stirling2(n: usize, k: usize) -> BigCount {
    if k > n {
        return BigUint::zero();
    }
    let mut row = vec![BigUint::zero(); k + 1];
    row[0] = BigUint::one();
    for i in 1..=n {
        for j in (1..=k.min(i)).rev() {
            row[j] = &row[j] * j + &row[j - 1];
        }
        row[0] = BigUint::zero();
    }
    row[k].clone()
}

/// Bell numbers via the Bell triangle.
pub fn bell(n: usize) -> BigCount {
    let mut row = vec![BigUint::one()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(row.last().expect("nonempty").clone());
        for x in &row {
            let v = next.last().expect("nonempty") + x;
            next.push(v);
        }
        row = next;
    }
    row[0].clone()
}

/// Matchings with fixed points on `[n]`: `sum_k C(n, 2k) (2k-1)!!`.
pub fn m_count(n: usize) -> BigCount {
    (0..=n / 2)
        .map(|k| binomial(n, 2 * k) * perfect_matchings(k))
        .sum()
}

/// `|M_{k,f}|`: partitions of `[2k+f]` into `k` doubletons and `f` singletons.
pub fn matchings_with_fixed_points(k: usize, f: usize) -> BigCount {
    binomial(2 * k + f, f) * perfect_matchings(k)
}

/// Catalan number `C_n`.
pub fn catalan(n: usize) -> BigCount {
    binomial(2 * n, n) / (n + 1)
}
