//! Unobservable regime: customers know only the system parameters and follow
//! a common joining probability. The mean occupancy of the thinned
//! infinite-server system is `rho q`, so equilibrium and pricing reduce to
//! one-dimensional problems in `q`. Welfare and revenue coincide here, so a
//! single quantity serves both.

use crate::cost::CostPolynomial;
use crate::error::{Error, Result};
use crate::params::SystemParams;

/// Bisection width for the joining-probability solvers.
const Q_TOL: f64 = 1e-15;

/// Equilibrium joining probability.
///
/// Everyone joins when the reward covers the congestion cost at full load;
/// otherwise the equilibrium is the unique zero of `R - c(rho q)` in (0, 1).
pub fn equilibrium_join_prob(params: &SystemParams, cost: &CostPolynomial) -> f64 {
    let rho = params.rho();
    let reward = params.reward();
    if reward >= cost.eval(rho) {
        return 1.0;
    }
    bisect_decreasing(|q| reward - cost.eval(rho * q))
}

/// Revenue (equivalently welfare) rate at joining probability `q`:
/// `q Lambda [R - c(rho q)]`.
pub fn revenue_unobservable(params: &SystemParams, cost: &CostPolynomial, q: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::domain(format!(
            "joining probability must be in [0, 1], got {q}"
        )));
    }
    Ok(q * params.lambda() * (params.reward() - cost.eval(params.rho() * q)))
}

/// Revenue-optimal joining probability with its supporting entrance price.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnobservableOptimum {
    /// Optimal joining probability.
    pub join_prob: f64,
    /// Entrance price that induces it, `R - c(rho q)`.
    pub price: f64,
    /// Revenue (= welfare) rate at the optimum.
    pub revenue: f64,
}

/// Maximize `S(q) = q Lambda [R - c(rho q)]` over `q` in [0, 1].
///
/// `S` is strictly concave with derivative `Lambda [R - sum (i+1) C_i (rho
/// q)^i]`, so either the derivative is still nonnegative at `q = 1` (everyone
/// joins) or its unique zero is the optimum.
pub fn optimal_join_prob(params: &SystemParams, cost: &CostPolynomial) -> UnobservableOptimum {
    let rho = params.rho();
    let reward = params.reward();
    let q = if reward >= cost.aggregate_marginal(rho) {
        1.0
    } else {
        bisect_decreasing(|q| reward - cost.aggregate_marginal(rho * q))
    };
    let price = reward - cost.eval(rho * q);
    UnobservableOptimum {
        join_prob: q,
        price,
        revenue: q * params.lambda() * price,
    }
}

/// Root of a strictly decreasing function on (0, 1) with `f(0) > 0 > f(1)`.
fn bisect_decreasing(f: impl Fn(f64) -> f64) -> f64 {
    let mut lo = 0.0_f64;
    let mut hi = 1.0_f64;
    while hi - lo > Q_TOL {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Equilibrium and optimal joining behavior at one parameter point.
#[derive(Debug, Clone)]
pub struct UnobservableAnalysis {
    params: SystemParams,
    cost: CostPolynomial,
    /// Equilibrium joining probability under free entry.
    pub equilibrium_join_prob: f64,
    /// Revenue-optimal joining probability.
    pub optimal_join_prob: f64,
    /// Entrance price inducing the optimum.
    pub optimal_price: f64,
    /// Revenue (= welfare) rate at the optimum.
    pub optimal_revenue: f64,
}

impl UnobservableAnalysis {
    pub fn analyze(params: &SystemParams, cost: &CostPolynomial) -> Self {
        let optimum = optimal_join_prob(params, cost);
        Self {
            params: *params,
            cost: cost.clone(),
            equilibrium_join_prob: equilibrium_join_prob(params, cost),
            optimal_join_prob: optimum.join_prob,
            optimal_price: optimum.price,
            optimal_revenue: optimum.revenue,
        }
    }

    /// Revenue rate at an arbitrary joining probability.
    pub fn revenue_at(&self, q: f64) -> Result<f64> {
        revenue_unobservable(&self.params, &self.cost, q)
    }
}
