//! Observable regime: customers see the live occupancy and follow threshold
//! strategies. Computes the individual equilibrium threshold, the socially
//! optimal threshold, and the revenue-optimal threshold with its admission
//! price, plus the full welfare and revenue curves.

use crate::cost::CostPolynomial;
use crate::erlang::{self, TruncationSweep};
use crate::error::{Error, Result};
use crate::params::SystemParams;

/// Default cap on the equilibrium threshold search. Hitting it means the cost
/// polynomial is negligible against the reward.
pub const DEFAULT_THRESHOLD_BOUND: usize = 10_000_000;

/// Relative tolerance for the weak inequalities in the threshold conditions.
/// Both sides are ratios of Erlang quantities, so exact boundary cases (cost
/// exactly equal to reward) land a few ulps off the analytic value.
const THRESHOLD_REL_TOL: f64 = 1e-9;

fn leq_tol(lhs: f64, rhs: f64) -> bool {
    if lhs <= rhs {
        return true;
    }
    // NaN and +inf conditions (degenerate mean gaps) never satisfy.
    lhs.is_finite() && lhs - rhs <= THRESHOLD_REL_TOL * rhs.abs().max(lhs.abs())
}

/// Utility `R - c(n)` of joining when `n` customers are present.
pub fn individual_utility(params: &SystemParams, cost: &CostPolynomial, n: usize) -> f64 {
    params.reward() - cost.eval(n as f64)
}

/// Equilibrium threshold: the largest `N` with `c(N - 1) <= R`. Customers
/// join exactly when they observe fewer than this many in the system.
pub fn equilibrium_threshold(params: &SystemParams, cost: &CostPolynomial) -> Result<usize> {
    equilibrium_threshold_bounded(params, cost, DEFAULT_THRESHOLD_BOUND)
}

/// As [`equilibrium_threshold`] with an explicit search bound.
pub fn equilibrium_threshold_bounded(
    params: &SystemParams,
    cost: &CostPolynomial,
    bound: usize,
) -> Result<usize> {
    if bound == 0 {
        return Err(Error::config("threshold bound must be at least one"));
    }
    let reward = params.reward();
    let joinable = |n: usize| leq_tol(cost.eval((n - 1) as f64), reward);
    if joinable(bound + 1) {
        return Err(Error::ThresholdOverflow { bound });
    }
    // joinable(1) always holds since c(0) = 0 < R.
    let mut lo = 1usize;
    let mut hi = 2usize;
    while hi <= bound && joinable(hi) {
        lo = hi;
        hi *= 2;
    }
    let mut hi = hi.min(bound + 1);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if joinable(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// Welfare rate under threshold `n`:
/// `mu R E(L_n) - mu rho sum_i C_i sum_{m<n} m^i p_m`.
pub fn social_welfare(params: &SystemParams, cost: &CostPolynomial, n: usize) -> Result<f64> {
    if n == 0 {
        return Ok(0.0);
    }
    let rho = params.rho();
    let mean = erlang::expected_occupancy(rho, n)?;
    let mut penalty = 0.0;
    for (i, &c) in cost.coefficients().iter().enumerate() {
        if c > 0.0 {
            penalty += c * erlang::partial_power_moment(rho, n, i + 1, n - 1)?;
        }
    }
    Ok(params.mu() * (params.reward() * mean - rho * penalty))
}

/// Revenue rate under threshold `n >= 1` at the highest admission price the
/// marginal customer accepts: `mu E(L_n) [R - c(n - 1)]`.
pub fn revenue(params: &SystemParams, cost: &CostPolynomial, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain(
            "revenue is defined for thresholds of at least one".to_string(),
        ));
    }
    let mean = erlang::expected_occupancy(params.rho(), n)?;
    Ok(params.mu() * mean * (params.reward() - cost.eval((n - 1) as f64)))
}

/// Socially optimal threshold (unique maximizer of the welfare rate).
pub fn socially_optimal_threshold(
    params: &SystemParams,
    cost: &CostPolynomial,
) -> Result<usize> {
    Ok(ObservableAnalysis::analyze(params, cost)?.socially_optimal_threshold)
}

/// Revenue-optimal threshold and its admission price `R - c(n_opt - 1)`.
pub fn revenue_optimal_threshold(
    params: &SystemParams,
    cost: &CostPolynomial,
) -> Result<(usize, f64)> {
    let a = ObservableAnalysis::analyze(params, cost)?;
    Ok((a.revenue_optimal_threshold, a.optimal_price))
}

/// Full observable-regime analysis for one parameter point.
#[derive(Debug, Clone)]
pub struct ObservableAnalysis {
    /// Largest individually rational threshold.
    pub equilibrium_threshold: usize,
    /// Maximizer of the welfare curve.
    pub socially_optimal_threshold: usize,
    /// Maximizer of the revenue curve.
    pub revenue_optimal_threshold: usize,
    /// Admission price at the revenue optimum, `R - c(n_opt - 1)`.
    pub optimal_price: f64,
    /// Welfare rate for every threshold `0 ..= equilibrium_threshold`.
    pub welfare_curve: Vec<f64>,
    /// Revenue rate for every threshold; entry 0 is the zero-admission limit.
    pub revenue_curve: Vec<f64>,
    /// Thresholds recovered from the marginal optimality conditions, kept for
    /// cross-checking against the curve scans.
    pub socially_optimal_by_marginal: usize,
    pub revenue_optimal_by_marginal: usize,
}

impl ObservableAnalysis {
    pub fn analyze(params: &SystemParams, cost: &CostPolynomial) -> Result<Self> {
        Self::analyze_bounded(params, cost, DEFAULT_THRESHOLD_BOUND)
    }

    pub fn analyze_bounded(
        params: &SystemParams,
        cost: &CostPolynomial,
        bound: usize,
    ) -> Result<Self> {
        let n_max = equilibrium_threshold_bounded(params, cost, bound)?;
        let curves = ThresholdCurves::compute(params, cost, n_max)?;

        let by_scan = argmax_prefer_larger(&curves.welfare, 0);
        let social = reconcile(
            "welfare",
            &curves.welfare,
            by_scan,
            curves.social_by_marginal,
            curves.social_marginal_monotone,
        )?;
        let by_scan = argmax_prefer_larger(&curves.revenue, 1);
        let monopoly = reconcile(
            "revenue",
            &curves.revenue,
            by_scan,
            curves.revenue_by_marginal,
            curves.revenue_marginal_monotone,
        )?;
        debug_assert!(social <= n_max && monopoly <= n_max);

        let optimal_price = params.reward() - cost.eval((monopoly - 1) as f64);
        Ok(Self {
            equilibrium_threshold: n_max,
            socially_optimal_threshold: social,
            revenue_optimal_threshold: monopoly,
            optimal_price,
            welfare_curve: curves.welfare,
            revenue_curve: curves.revenue,
            socially_optimal_by_marginal: curves.social_by_marginal,
            revenue_optimal_by_marginal: curves.revenue_by_marginal,
        })
    }
}

/// Largest index whose value ties the maximum, where a tie means equality
/// within the documented relative tolerance. The weak inequality in the
/// marginal conditions resolves exact boundaries to the larger threshold,
/// and in saturated regimes (load far below the threshold range) the curve
/// flattens to within a few ulps, where raw float comparisons would make the
/// argmax depend on the common scale of reward and cost.
fn argmax_prefer_larger(values: &[f64], from: usize) -> usize {
    let mut max = f64::NEG_INFINITY;
    for &v in &values[from..] {
        if v > max {
            max = v;
        }
    }
    let band = THRESHOLD_REL_TOL * max.abs();
    let mut best = from;
    for (n, &v) in values.iter().enumerate().skip(from) {
        if v >= max - band {
            best = n;
        }
    }
    best
}

/// True when `current` is at least `previous` up to the documented relative
/// tolerance; NaN on either side (degenerate mean gaps) counts as a break.
fn weakly_rising(current: f64, previous: f64) -> bool {
    let floor = previous - THRESHOLD_REL_TOL * previous.abs().max(1.0);
    matches!(
        current.partial_cmp(&floor),
        Some(std::cmp::Ordering::Greater | std::cmp::Ordering::Equal)
    )
}

/// Merge the scan and marginal-condition answers.
///
/// They must agree, except where f64 cannot tell the candidates apart: if the
/// curve values at the two candidates are equal at working precision the tie
/// rule picks the larger, and if rounding broke the monotonicity of the
/// marginal condition the scan is authoritative.
fn reconcile(
    what: &str,
    curve: &[f64],
    by_scan: usize,
    by_marginal: usize,
    marginal_monotone: bool,
) -> Result<usize> {
    if by_scan == by_marginal {
        return Ok(by_scan);
    }
    let a = curve[by_scan];
    let b = curve[by_marginal];
    if (a - b).abs() <= THRESHOLD_REL_TOL * a.abs().max(b.abs()).max(1.0) {
        return Ok(by_scan.max(by_marginal));
    }
    if !marginal_monotone {
        return Ok(by_scan);
    }
    Err(Error::Consistency(format!(
        "{what} maximizer: scan found {by_scan} but the marginal condition found {by_marginal}"
    )))
}

/// Welfare and revenue for every threshold up to `n_max`, plus the marginal
/// optimality conditions, all from one pass of the Erlang-B recursion.
struct ThresholdCurves {
    welfare: Vec<f64>,
    revenue: Vec<f64>,
    social_by_marginal: usize,
    revenue_by_marginal: usize,
    social_marginal_monotone: bool,
    revenue_marginal_monotone: bool,
}

impl ThresholdCurves {
    fn compute(params: &SystemParams, cost: &CostPolynomial, n_max: usize) -> Result<Self> {
        let degree = cost.degree();
        if degree > erlang::MAX_MOMENT_POWER {
            return Err(Error::domain(format!(
                "cost degree {degree} exceeds the supported moment power {}",
                erlang::MAX_MOMENT_POWER
            )));
        }
        let rho = params.rho();
        let lambda = params.lambda();
        let reward = params.reward();
        let coeffs = cost.coefficients();

        let mut welfare = vec![0.0_f64; n_max + 1];
        let mut revenue = vec![0.0_f64; n_max + 1];
        let mut sweep = TruncationSweep::new(rho, degree);
        // Moment snapshots lag the sweep by one and two levels.
        let mut moments_back1 = vec![0.0_f64; degree];
        let mut moments_back2 = vec![0.0_f64; degree];
        let mut social_by_marginal = 0usize;
        let mut revenue_by_marginal = 0usize;
        let mut social_monotone = true;
        let mut revenue_monotone = true;
        let mut last_social = f64::NEG_INFINITY;
        let mut last_revenue = f64::NEG_INFINITY;

        for n in 1..=n_max {
            let mean_prev = sweep.mean();
            let keep_prev = 1.0 - sweep.blocking();
            moments_back1.copy_from_slice(sweep.moments());
            sweep.step();
            let keep = 1.0 - sweep.blocking();
            let mean = sweep.mean();

            let mut congestion = 0.0;
            for (i, &c) in coeffs.iter().enumerate() {
                congestion += c * moments_back1[i];
            }
            welfare[n] = lambda * keep * (reward - congestion);
            revenue[n] = lambda * keep * (reward - cost.eval((n - 1) as f64));

            let mean_gap = mean - mean_prev;
            let mut social_gain = 0.0;
            for (i, &c) in coeffs.iter().enumerate() {
                social_gain += c * (moments_back1[i] * keep - moments_back2[i] * keep_prev);
            }
            let social_cond = rho * social_gain / mean_gap;
            let mut revenue_gain = 0.0;
            let nf = n as f64;
            for (i, &c) in coeffs.iter().enumerate() {
                let p = i as i32 + 1;
                revenue_gain +=
                    c * (mean * (nf - 1.0).powi(p) - mean_prev * (nf - 2.0).powi(p));
            }
            let revenue_cond = revenue_gain / mean_gap;

            if leq_tol(social_cond, reward) {
                social_by_marginal = n;
            }
            if leq_tol(revenue_cond, reward) {
                revenue_by_marginal = n;
            }
            if !weakly_rising(social_cond, last_social) {
                social_monotone = false;
            }
            if !weakly_rising(revenue_cond, last_revenue) {
                revenue_monotone = false;
            }
            last_social = social_cond;
            last_revenue = revenue_cond;
            std::mem::swap(&mut moments_back1, &mut moments_back2);
        }

        Ok(Self {
            welfare,
            revenue,
            social_by_marginal: social_by_marginal.max(1),
            revenue_by_marginal: revenue_by_marginal.max(1),
            social_marginal_monotone: social_monotone,
            revenue_marginal_monotone: revenue_monotone,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quad_params() -> (SystemParams, CostPolynomial) {
        let params = SystemParams::new(20.0, 1.0 / 60.0, 400.0).unwrap();
        let cost = CostPolynomial::quadratic(0.0, 0.01).unwrap();
        (params, cost)
    }

    #[test]
    fn utility_examples() {
        let (params, cost) = quad_params();
        assert_eq!(individual_utility(&params, &cost, 0), 400.0);
        assert!(individual_utility(&params, &cost, 200).abs() < 1e-9);
        let p = SystemParams::new(1.0, 1.0, 15.0).unwrap();
        let lin = CostPolynomial::linear(1.0).unwrap();
        assert_eq!(individual_utility(&p, &lin, 7), 8.0);
    }

    #[test]
    fn equilibrium_threshold_linear_cases() {
        let lin = CostPolynomial::linear(1.0).unwrap();
        let p = SystemParams::new(1.0, 1.0, 15.0).unwrap();
        assert_eq!(equilibrium_threshold(&p, &lin).unwrap(), 16);
        let p = SystemParams::new(1.0, 1.0, 0.5).unwrap();
        assert_eq!(equilibrium_threshold(&p, &lin).unwrap(), 1);
    }

    #[test]
    fn equilibrium_threshold_matches_quadratic_closed_form() {
        // max{N : N <= (2 C2 - C1 + sqrt(C1^2 + 4 C2 R)) / (2 C2)}, evaluated
        // with the same boundary tolerance the search uses, since exact
        // boundaries like c(200) = 400 round a few ulps above the reward.
        let cases = [
            (0.0, 0.01, 400.0),
            (1.0, 0.5, 123.0),
            (0.2, 0.03, 7.7),
            (3.0, 1.0, 10000.0),
        ];
        for &(c1, c2, r) in &cases {
            let params = SystemParams::new(1.0, 1.0, r).unwrap();
            let cost = CostPolynomial::quadratic(c1, c2).unwrap();
            let root = (2.0 * c2 - c1 + (c1 * c1 + 4.0 * c2 * r).sqrt()) / (2.0 * c2);
            let closed = (root + 1e-9 * root.abs()).floor() as usize;
            assert_eq!(
                equilibrium_threshold(&params, &cost).unwrap(),
                closed,
                "C1={c1} C2={c2} R={r}"
            );
        }
    }

    #[test]
    fn equilibrium_threshold_overflows_on_negligible_cost() {
        let params = SystemParams::new(1.0, 1.0, 1e4).unwrap();
        let cost = CostPolynomial::linear(1e-12).unwrap();
        match equilibrium_threshold(&params, &cost) {
            Err(Error::ThresholdOverflow { bound }) => {
                assert_eq!(bound, DEFAULT_THRESHOLD_BOUND)
            }
            other => panic!("expected overflow, got {other:?}"),
        }
    }

    #[test]
    fn welfare_of_empty_policy_is_zero() {
        let (params, cost) = quad_params();
        assert_eq!(social_welfare(&params, &cost, 0).unwrap(), 0.0);
    }

    #[test]
    fn welfare_matches_admission_weighted_sum() {
        // Direct PASTA sum for rho=2, mu=1, R=10, linear unit cost, n=3.
        let params = SystemParams::new(2.0, 1.0, 10.0).unwrap();
        let cost = CostPolynomial::linear(1.0).unwrap();
        let got = social_welfare(&params, &cost, 3).unwrap();
        let expect = 264.0 / 19.0; // exact rational value of the sum
        assert!((got - expect).abs() < 1e-12 * expect);
    }

    #[test]
    fn revenue_rejects_zero_threshold() {
        let (params, cost) = quad_params();
        assert!(revenue(&params, &cost, 0).is_err());
    }

    #[test]
    fn revenue_examples() {
        let params = SystemParams::new(2.0, 1.0, 10.0).unwrap();
        let cost = CostPolynomial::linear(1.0).unwrap();
        // n = 1: price R, rate mu E(L_1)
        let e1 = erlang::expected_occupancy(2.0, 1).unwrap();
        let got = revenue(&params, &cost, 1).unwrap();
        assert!((got - e1 * 10.0).abs() < 1e-12);
        // n = 4: mu E(L_4) (R - 3) = (38/21) * 7 = 38/3
        let got = revenue(&params, &cost, 4).unwrap();
        assert!((got - 38.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn vanishing_load_pushes_social_optimum_to_equilibrium() {
        let params = SystemParams::new(1e-6, 1.0, 15.0).unwrap();
        let cost = CostPolynomial::linear(1.0).unwrap();
        let a = ObservableAnalysis::analyze(&params, &cost).unwrap();
        assert_eq!(a.equilibrium_threshold, 16);
        assert_eq!(a.socially_optimal_threshold, 16);
        assert_eq!(a.revenue_optimal_threshold, 1);
        assert_eq!(a.optimal_price, 15.0);
    }

    #[test]
    fn reward_below_marginal_cost_keeps_one_slot() {
        let params = SystemParams::new(3.0, 1.0, 0.5).unwrap();
        let cost = CostPolynomial::linear(1.0).unwrap();
        let a = ObservableAnalysis::analyze(&params, &cost).unwrap();
        assert_eq!(a.socially_optimal_threshold, 1);
        assert_eq!(a.revenue_optimal_threshold, 1);
    }

    #[test]
    fn curves_match_pointwise_formulas() {
        let params = SystemParams::new(4.0, 0.5, 25.0).unwrap();
        let cost = CostPolynomial::new(vec![0.5, 0.1, 0.01]).unwrap();
        let a = ObservableAnalysis::analyze(&params, &cost).unwrap();
        for n in 0..=a.equilibrium_threshold {
            let w = social_welfare(&params, &cost, n).unwrap();
            assert!(
                (a.welfare_curve[n] - w).abs() <= 1e-9 * w.abs().max(1.0),
                "welfare mismatch at n={n}: {} vs {w}",
                a.welfare_curve[n]
            );
            if n >= 1 {
                let r = revenue(&params, &cost, n).unwrap();
                assert!(
                    (a.revenue_curve[n] - r).abs() <= 1e-9 * r.abs().max(1.0),
                    "revenue mismatch at n={n}"
                );
            }
        }
    }

    #[test]
    fn welfare_dominates_revenue_at_monopoly_threshold() {
        // Strict for thresholds of two or more; equal when only one customer
        // is ever admitted (that customer pays the full surplus).
        let params = SystemParams::new(12.0, 1.0, 15.0).unwrap();
        let cost = CostPolynomial::linear(1.0).unwrap();
        let a = ObservableAnalysis::analyze(&params, &cost).unwrap();
        assert!(a.revenue_optimal_threshold >= 2);
        let w = a.welfare_curve[a.revenue_optimal_threshold];
        let r = a.revenue_curve[a.revenue_optimal_threshold];
        assert!(w > r);

        let params = SystemParams::new(1e-6, 1.0, 15.0).unwrap();
        let a = ObservableAnalysis::analyze(&params, &cost).unwrap();
        assert_eq!(a.revenue_optimal_threshold, 1);
        let w = a.welfare_curve[1];
        let r = a.revenue_curve[1];
        assert!((w - r).abs() <= 1e-12 * w.abs().max(1.0));
    }

    #[test]
    fn thresholds_are_scale_invariant() {
        let cost = CostPolynomial::quadratic(0.3, 0.05).unwrap();
        let params = SystemParams::new(6.0, 1.0, 40.0).unwrap();
        let base = ObservableAnalysis::analyze(&params, &cost).unwrap();
        for &scale in &[2.0, 0.125, 37.5] {
            let scaled_cost = CostPolynomial::new(
                cost.coefficients().iter().map(|c| c * scale).collect(),
            )
            .unwrap();
            let scaled_params = SystemParams::new(6.0, 1.0, 40.0 * scale).unwrap();
            let scaled = ObservableAnalysis::analyze(&scaled_params, &scaled_cost).unwrap();
            assert_eq!(scaled.equilibrium_threshold, base.equilibrium_threshold);
            assert_eq!(
                scaled.socially_optimal_threshold,
                base.socially_optimal_threshold
            );
            assert_eq!(
                scaled.revenue_optimal_threshold,
                base.revenue_optimal_threshold
            );
        }
    }
}
