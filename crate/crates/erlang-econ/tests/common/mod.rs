//! Exact-rational reference implementations of every analytic quantity,
//! evaluated straight from the defining sums with `BigRational` arithmetic.
//! Deliberately naive and allocation-heavy: these exist to check the fast
//! f64 kernels, not to be fast.

// Each integration test target compiles this module and uses its own subset.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn big(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Exact rational value of an f64 (the binary value, not the decimal it was
/// written as, so the oracle sees the same inputs the implementation does).
pub fn from_f64(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite float")
}

pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().expect("in f64 range")
}

/// `sum_{k=0}^{n} rho^k / k!`, with the empty sum for `n < 0`.
pub fn partial_sum(rho: &BigRational, n: i64) -> BigRational {
    let mut acc = BigRational::zero();
    let mut term = BigRational::one();
    for k in 0..=n.max(-1) {
        if k > 0 {
            term = &term * rho / big(k);
        }
        acc += &term;
    }
    acc
}

/// Stationary probability of `j` customers under truncation `n`.
pub fn occupancy_prob(rho: &BigRational, n: i64, j: i64) -> BigRational {
    let mut weight = BigRational::one();
    for k in 1..=j {
        weight = &weight * rho / big(k);
    }
    weight / partial_sum(rho, n)
}

pub fn expected_occupancy(rho: &BigRational, n: i64) -> BigRational {
    if n == 0 {
        return BigRational::zero();
    }
    rho * partial_sum(rho, n - 1) / partial_sum(rho, n)
}

/// `sum_{m=0}^{cutoff} m^i p_m` under truncation `n`.
pub fn power_moment(rho: &BigRational, n: i64, power: u32, cutoff: i64) -> BigRational {
    let mut acc = BigRational::zero();
    let mut weight = BigRational::one();
    for m in 0..=cutoff.max(-1) {
        if m > 0 {
            weight = &weight * rho / big(m);
        }
        acc += big(m).pow(power as i32) * &weight;
    }
    acc / partial_sum(rho, n)
}

pub fn cost_at(coeffs: &[BigRational], m: i64) -> BigRational {
    let mut acc = BigRational::zero();
    for (i, c) in coeffs.iter().enumerate() {
        acc += c * big(m).pow(i as i32 + 1);
    }
    acc
}

/// Welfare rate as the admission-weighted utility sum:
/// `Lambda sum_{m<n} p_m [R - c(m)]`.
pub fn social_welfare(
    lambda: &BigRational,
    mu: &BigRational,
    reward: &BigRational,
    coeffs: &[BigRational],
    n: i64,
) -> BigRational {
    let rho = lambda / mu;
    let total = partial_sum(&rho, n);
    let mut acc = BigRational::zero();
    let mut weight = BigRational::one();
    for m in 0..n {
        if m > 0 {
            weight = &weight * &rho / big(m);
        }
        acc += &weight * (reward - cost_at(coeffs, m));
    }
    lambda * acc / total
}

/// Revenue rate `mu E(L_n) [R - c(n - 1)]`.
pub fn revenue(
    lambda: &BigRational,
    mu: &BigRational,
    reward: &BigRational,
    coeffs: &[BigRational],
    n: i64,
) -> BigRational {
    let rho = lambda / mu;
    mu * expected_occupancy(&rho, n) * (reward - cost_at(coeffs, n - 1))
}

pub fn rel_close(actual: f64, exact: &BigRational, tol: f64) -> bool {
    let actual_r = from_f64(actual);
    let diff = (&actual_r - exact).abs();
    let scale = exact.abs().max(BigRational::one());
    diff <= from_f64(tol) * scale
}
