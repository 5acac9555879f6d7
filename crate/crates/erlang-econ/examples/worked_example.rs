//! The full worked-example report: every quantity of the reference scenario
//! side by side with its published value, including both admission-price
//! conventions.
//!
//! Run with: cargo run --example worked_example

use erlang_econ::sweep::report::worked_example_report;

fn main() -> erlang_econ::Result<()> {
    print!("{}", worked_example_report()?);
    Ok(())
}
