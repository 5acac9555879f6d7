//! Insensitivity of the loss system: the stationary occupancy law depends on
//! the service-time distribution only through its mean. Simulates the same
//! system under four service laws and compares each empirical distribution
//! with the analytic one.
//!
//! Run with: cargo run --release --example insensitivity_check

use erlang_econ::erlang::occupancy_distribution;
use erlang_econ::sim::{
    simulate_observable, total_variation, AdmissionPolicy, ServiceDistribution, ServiceKind,
    SimConfig,
};
use erlang_econ::{CostPolynomial, SystemParams};

fn main() -> erlang_econ::Result<()> {
    let params = SystemParams::new(2.0, 1.0, 10.0)?;
    let cost = CostPolynomial::linear(1.0)?;
    let threshold = 3;
    let stationary = occupancy_distribution(params.rho(), threshold)?;

    println!("analytic law: {:?}", stationary.probs());
    println!();
    println!(
        "{:>14} {:>12} {:>12} {:>12}",
        "service", "TV distance", "mean", "join rate"
    );
    for kind in [
        ServiceKind::Exponential,
        ServiceKind::Deterministic,
        ServiceKind::Uniform,
        ServiceKind::LogNormal { sigma: 1.0 },
    ] {
        let config = SimConfig::new(
            params,
            cost.clone(),
            AdmissionPolicy::Threshold(threshold),
            ServiceDistribution::new(kind, params.mu())?,
            50_000.0,
            7,
            10,
        );
        let result = simulate_observable(&config)?;
        let tv = total_variation(&result.occupancy_pmf, stationary.probs());
        println!(
            "{:>14} {:>12.5} {:>12.4} {:>12.4}",
            kind.label(),
            tv,
            result.mean_occupancy.value,
            result.joining_rate
        );
    }
    Ok(())
}
