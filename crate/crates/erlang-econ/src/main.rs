//! Command-line front end: `sweep` writes the fixed-schema CSV over a load
//! grid, `example` prints the worked-example comparison report, and
//! `validate` runs the simulator against the analytic values.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use erlang_econ::sweep::config::{load_config, FileConfig};
use erlang_econ::sweep::report::worked_example_report;
use erlang_econ::sweep::validate::run_validation;
use erlang_econ::sweep::{run_sweep, AnalysisMode, SweepSpec};
use erlang_econ::CostPolynomial;

#[derive(Parser)]
#[command(name = "erlang-econ", version, about = "Admission economics of infinite-server loss systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate both regimes over a load grid and emit CSV.
    Sweep(GridArgs),
    /// Print the worked-example report with reference comparisons.
    Example,
    /// Simulate each grid point and compare against the analytic values.
    Validate(GridArgs),
}

#[derive(Args)]
struct GridArgs {
    /// Key-value config file; flags given here override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output CSV path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// obs, unobs, or both.
    #[arg(long)]
    mode: Option<String>,
    /// Run the simulator against the analytic values (same as `validate`).
    #[arg(long)]
    simulate: bool,
    #[arg(long)]
    rho_min: Option<f64>,
    #[arg(long)]
    rho_max: Option<f64>,
    #[arg(long)]
    rho_step: Option<f64>,
    #[arg(long)]
    mu: Option<f64>,
    #[arg(long)]
    reward: Option<f64>,
    /// Cost coefficients `c1,c2,...`.
    #[arg(long)]
    cost: Option<String>,
    /// Simulated time per replication, in mean service times.
    #[arg(long)]
    horizon: Option<f64>,
    #[arg(long)]
    warmup_frac: Option<f64>,
    #[arg(long)]
    replications: Option<usize>,
    /// Validate at this threshold instead of the socially optimal one.
    #[arg(long)]
    threshold: Option<usize>,
    /// Validate at this joining probability instead of the optimal one.
    #[arg(long)]
    join_prob: Option<f64>,
}

impl GridArgs {
    fn into_spec(self) -> erlang_econ::Result<SweepSpec> {
        let file = match &self.config {
            Some(path) => load_config(path)?,
            None => FileConfig::default(),
        };
        let cost_coeffs = match &self.cost {
            Some(text) => Some(
                text.split(',')
                    .map(|c| c.trim().parse::<f64>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| {
                        erlang_econ::Error::Config(format!("invalid cost list `{text}`"))
                    })?,
            ),
            None => file.cost.clone(),
        };
        let cost = CostPolynomial::new(cost_coeffs.unwrap_or_else(|| vec![1.0]))?;
        let mode = match &self.mode {
            Some(text) => text.parse::<AnalysisMode>()?,
            None => file.mode.unwrap_or(AnalysisMode::Both),
        };

        let mut spec = SweepSpec::new(
            self.rho_min.or(file.rho_min).unwrap_or(0.5),
            self.rho_max.or(file.rho_max).unwrap_or(20.0),
            self.rho_step.or(file.rho_step).unwrap_or(0.5),
            self.mu.or(file.mu).unwrap_or(1.0),
            self.reward.or(file.reward).unwrap_or(15.0),
            cost,
        );
        spec.mode = mode;
        spec.simulate = self.simulate || file.simulate.unwrap_or(false);
        spec.seed = self.seed.or(file.seed).unwrap_or(0);
        spec.out = self.out.or(file.out);
        if let Some(h) = self.horizon.or(file.horizon) {
            spec.horizon_services = h;
        }
        if let Some(w) = self.warmup_frac.or(file.warmup_frac) {
            spec.warmup_frac = w;
        }
        if let Some(r) = self.replications.or(file.replications) {
            spec.replications = r;
        }
        spec.threshold = self.threshold.or(file.threshold);
        spec.join_prob = self.join_prob.or(file.join_prob);
        Ok(spec)
    }
}

fn sweep(args: GridArgs) -> erlang_econ::Result<bool> {
    let spec = args.into_spec()?;
    if spec.simulate {
        return validate_spec(spec);
    }
    let dataset = run_sweep(&spec)?;
    match &spec.out {
        Some(path) => {
            dataset.write_csv(path)?;
            eprintln!("wrote {} rows to {}", dataset.rows.len(), path.display());
        }
        None => print!("{}", dataset.to_csv()),
    }
    Ok(true)
}

fn validate_spec(spec: SweepSpec) -> erlang_econ::Result<bool> {
    let report = run_validation(&spec)?;
    print!("{}", report.summary());
    if let Some(path) = &spec.out {
        report.write_csv(path)?;
        eprintln!("wrote {} rows to {}", report.rows.len(), path.display());
    }
    Ok(report.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Sweep(args) => sweep(args),
        Command::Example => worked_example_report().map(|report| {
            print!("{report}");
            true
        }),
        Command::Validate(args) => args.into_spec().and_then(validate_spec),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::FAILURE
        }
    }
}
