//! Sweep the offered load and compare welfare and revenue across the two
//! information regimes. Shows the crossover: at light loads hiding the
//! occupancy earns more revenue, at heavy loads posting it wins.
//!
//! Run with: cargo run --example welfare_revenue_sweep

use erlang_econ::sweep::{run_sweep, SweepSpec};
use erlang_econ::CostPolynomial;

fn main() -> erlang_econ::Result<()> {
    let spec = SweepSpec::new(0.5, 20.0, 0.5, 1.0, 15.0, CostPolynomial::linear(1.0)?);
    let data = run_sweep(&spec)?;

    println!(
        "{:>6} {:>4} {:>4} {:>4} {:>10} {:>12} {:>12} {:>9}",
        "rho", "n_eq", "n_soc", "n_rev", "welfare", "rev(posted)", "rev(hidden)", "post it?"
    );
    for row in &data.rows {
        let obs = row.observable.as_ref().unwrap();
        let unobs = row.unobservable.as_ref().unwrap();
        let gap = obs.revenue_at_revenue_optimum - unobs.optimal_revenue;
        println!(
            "{:>6} {:>4} {:>4} {:>4} {:>10.4} {:>12.4} {:>12.4} {:>9}",
            row.rho,
            obs.equilibrium_threshold,
            obs.socially_optimal_threshold,
            obs.revenue_optimal_threshold,
            obs.welfare_at_social_optimum,
            obs.revenue_at_revenue_optimum,
            unobs.optimal_revenue,
            if gap > 0.0 { "yes" } else { "no" }
        );
    }

    // Same dataset as CSV, ready for plotting.
    let path = std::env::temp_dir().join("welfare_revenue_sweep.csv");
    data.write_csv(&path)?;
    println!("\nwrote {}", path.display());
    Ok(())
}
