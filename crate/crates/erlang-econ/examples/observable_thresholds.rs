//! Threshold analysis for a system whose occupancy is posted publicly.
//!
//! Computes the equilibrium, socially optimal, and revenue-optimal admission
//! thresholds for one parameter point and prints the welfare and revenue
//! curves around the optima.
//!
//! Run with: cargo run --example observable_thresholds

use erlang_econ::observable::ObservableAnalysis;
use erlang_econ::{CostPolynomial, SystemParams};

fn main() -> erlang_econ::Result<()> {
    // 20 arrivals per minute, one-hour visits, reward 400, cost 0.01 N^2
    let params = SystemParams::new(20.0, 1.0 / 60.0, 400.0)?;
    let cost = CostPolynomial::quadratic(0.0, 0.01)?;

    let analysis = ObservableAnalysis::analyze(&params, &cost)?;
    println!("offered load                 {}", params.rho());
    println!("equilibrium threshold        {}", analysis.equilibrium_threshold);
    println!("socially optimal threshold   {}", analysis.socially_optimal_threshold);
    println!("revenue-optimal threshold    {}", analysis.revenue_optimal_threshold);
    println!("optimal admission price      {:.4}", analysis.optimal_price);
    println!();

    println!("{:>5} {:>14} {:>14}", "n", "welfare", "revenue");
    let peak = analysis.socially_optimal_threshold;
    for n in (0..=analysis.equilibrium_threshold).filter(|n| {
        *n % 25 == 0 || n.abs_diff(peak) <= 2
    }) {
        let marker = if n == peak { "  <- social optimum" } else { "" };
        println!(
            "{n:>5} {:>14.4} {:>14.4}{marker}",
            analysis.welfare_curve[n], analysis.revenue_curve[n]
        );
    }
    Ok(())
}
