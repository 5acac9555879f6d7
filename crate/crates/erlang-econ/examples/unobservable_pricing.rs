//! Pricing a system whose occupancy is hidden from arriving customers.
//!
//! Customers mix with a joining probability; the administrator picks the
//! entrance price that induces the revenue-maximizing one. Free entry drives
//! the aggregate surplus to zero, which is why the toll is worth charging.
//!
//! Run with: cargo run --example unobservable_pricing

use erlang_econ::unobservable::UnobservableAnalysis;
use erlang_econ::{CostPolynomial, SystemParams};

fn main() -> erlang_econ::Result<()> {
    let params = SystemParams::new(20.0, 1.0 / 60.0, 400.0)?;
    let cost = CostPolynomial::quadratic(0.0, 0.01)?;

    let analysis = UnobservableAnalysis::analyze(&params, &cost);
    println!("equilibrium joining probability   {:.6}", analysis.equilibrium_join_prob);
    println!("optimal joining probability       {:.6}", analysis.optimal_join_prob);
    println!("optimal entrance price            {:.4}", analysis.optimal_price);
    println!("revenue (= welfare) per minute    {:.4}", analysis.optimal_revenue);
    println!();

    // The revenue function is concave in q; its value at the free-entry
    // equilibrium is zero.
    println!("{:>8} {:>14}", "q", "revenue rate");
    for step in 0..=10 {
        let q = step as f64 / 10.0 * analysis.equilibrium_join_prob;
        println!("{q:>8.4} {:>14.4}", analysis.revenue_at(q)?);
    }
    Ok(())
}
