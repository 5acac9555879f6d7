//! Property tests for the structural guarantees: threshold ordering, scale
//! invariance, and the shape of the unobservable revenue function.

use proptest::prelude::*;

use erlang_econ::observable::ObservableAnalysis;
use erlang_econ::unobservable::{self, UnobservableAnalysis};
use erlang_econ::{CostPolynomial, SystemParams};

fn log_uniform(lo: f64, hi: f64) -> impl Strategy<Value = f64> {
    (lo.ln()..hi.ln()).prop_map(f64::exp)
}

fn cost_strategy() -> impl Strategy<Value = CostPolynomial> {
    prop::collection::vec(
        prop_oneof![2 => Just(0.0), 3 => log_uniform(1e-2, 10.0)],
        1..=4,
    )
    .prop_filter_map("needs a positive coefficient", |coeffs| {
        CostPolynomial::new(coeffs).ok()
    })
}

fn params_strategy() -> impl Strategy<Value = SystemParams> {
    (
        log_uniform(0.01, 2000.0),
        log_uniform(0.1, 10.0),
        log_uniform(0.1, 1e4),
    )
        .prop_map(|(rho, mu, reward)| SystemParams::from_offered_load(rho, mu, reward).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn monopoly_social_and_equilibrium_thresholds_are_ordered(
        params in params_strategy(),
        cost in cost_strategy(),
    ) {
        let a = ObservableAnalysis::analyze(&params, &cost).unwrap();
        prop_assert!(a.revenue_optimal_threshold <= a.socially_optimal_threshold);
        prop_assert!(a.socially_optimal_threshold <= a.equilibrium_threshold);
    }

    #[test]
    fn thresholds_ignore_common_scaling_of_reward_and_cost(
        params in params_strategy(),
        cost in cost_strategy(),
        scale in log_uniform(1e-3, 1e3),
    ) {
        let base = ObservableAnalysis::analyze(&params, &cost).unwrap();
        let scaled_params = SystemParams::new(
            params.lambda(),
            params.mu(),
            params.reward() * scale,
        ).unwrap();
        let scaled_cost = CostPolynomial::new(
            cost.coefficients().iter().map(|c| c * scale).collect(),
        ).unwrap();
        let scaled = ObservableAnalysis::analyze(&scaled_params, &scaled_cost).unwrap();
        prop_assert_eq!(base.equilibrium_threshold, scaled.equilibrium_threshold);
        prop_assert_eq!(base.socially_optimal_threshold, scaled.socially_optimal_threshold);
        prop_assert_eq!(base.revenue_optimal_threshold, scaled.revenue_optimal_threshold);
    }

    #[test]
    fn optimal_joining_never_exceeds_equilibrium(
        params in params_strategy(),
        cost in cost_strategy(),
    ) {
        let a = UnobservableAnalysis::analyze(&params, &cost);
        prop_assert!(a.optimal_join_prob <= a.equilibrium_join_prob + 1e-12);
        if a.equilibrium_join_prob < 1.0 {
            // free entry competes the surplus away
            let s = a.revenue_at(a.equilibrium_join_prob).unwrap();
            let scale = params.lambda() * params.reward();
            prop_assert!(s.abs() <= 1e-9 * scale.max(1.0));
        }
    }

    #[test]
    fn unobservable_revenue_is_midpoint_concave(
        params in params_strategy(),
        cost in cost_strategy(),
    ) {
        let s = |q: f64| unobservable::revenue_unobservable(&params, &cost, q).unwrap();
        let scale = params.lambda() * params.reward();
        for i in 0..50 {
            let a = i as f64 / 100.0;
            let b = a + 0.5;
            let mid = 0.5 * (a + b);
            prop_assert!(
                s(mid) >= 0.5 * (s(a) + s(b)) - 1e-9 * scale,
                "midpoint concavity failed at a={a}"
            );
        }
    }

    #[test]
    fn interior_optimum_is_a_stationary_point(
        params in params_strategy(),
        cost in cost_strategy(),
    ) {
        let opt = unobservable::optimal_join_prob(&params, &cost);
        let q = opt.join_prob;
        if q > 1e-6 && q < 1.0 - 1e-6 {
            // Step relative to q: at heavy loads the optimum sits at tiny q
            // where the third derivative would dominate an absolute step.
            let h = 1e-7 * q;
            let up = unobservable::revenue_unobservable(&params, &cost, q + h).unwrap();
            let down = unobservable::revenue_unobservable(&params, &cost, q - h).unwrap();
            let derivative = (up - down) / (2.0 * h);
            prop_assert!(
                derivative.abs() <= 1e-4 * opt.revenue.abs().max(1.0),
                "dS/dq = {derivative} at q = {q}"
            );
        }
    }

    #[test]
    fn quadratic_solver_matches_closed_forms(
        rho in log_uniform(0.1, 2000.0),
        mu in log_uniform(0.1, 10.0),
        reward in log_uniform(0.1, 1e4),
        c1 in log_uniform(1e-2, 10.0),
        c2 in log_uniform(1e-2, 10.0),
    ) {
        let params = SystemParams::from_offered_load(rho, mu, reward).unwrap();
        let cost = CostPolynomial::quadratic(c1, c2).unwrap();
        let disc = (c1 * c1 + 3.0 * reward * c2).sqrt();
        if reward < cost.aggregate_marginal(rho) {
            let opt = unobservable::optimal_join_prob(&params, &cost);
            let q_closed = (-c1 + disc) / (3.0 * c2 * rho);
            prop_assert!((opt.join_prob - q_closed).abs() <= 1e-10);
        }
        if reward < cost.eval(rho) {
            let q_e = unobservable::equilibrium_join_prob(&params, &cost);
            let closed = (-c1 + (c1 * c1 + 4.0 * reward * c2).sqrt()) / (2.0 * c2 * rho);
            prop_assert!((q_e - closed).abs() <= 1e-10);
        }
    }
}
