//! Parameter sweeps over the offered load, with fixed-schema CSV output.

pub mod config;
pub mod report;
pub mod validate;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::cost::CostPolynomial;
use crate::error::{Error, Result};
use crate::observable::ObservableAnalysis;
use crate::params::SystemParams;
use crate::unobservable::UnobservableAnalysis;

/// Which regimes a sweep evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnalysisMode {
    Observable,
    Unobservable,
    Both,
}

impl AnalysisMode {
    pub fn observable(self) -> bool {
        matches!(self, AnalysisMode::Observable | AnalysisMode::Both)
    }

    pub fn unobservable(self) -> bool {
        matches!(self, AnalysisMode::Unobservable | AnalysisMode::Both)
    }
}

impl FromStr for AnalysisMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "obs" => Ok(AnalysisMode::Observable),
            "unobs" => Ok(AnalysisMode::Unobservable),
            "both" => Ok(AnalysisMode::Both),
            other => Err(Error::config(format!(
                "mode must be one of obs, unobs, both; got `{other}`"
            ))),
        }
    }
}

/// Everything a sweep or validation run needs.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub rho_min: f64,
    pub rho_max: f64,
    pub rho_step: f64,
    pub mu: f64,
    pub reward: f64,
    pub cost: CostPolynomial,
    pub mode: AnalysisMode,
    pub simulate: bool,
    pub seed: u64,
    pub out: Option<PathBuf>,
    /// Simulated time per replication, in mean service times.
    pub horizon_services: f64,
    /// Fraction of the horizon discarded as warmup.
    pub warmup_frac: f64,
    pub replications: usize,
    /// Validation threshold override; defaults to the socially optimal one.
    pub threshold: Option<usize>,
    /// Validation joining-probability override; defaults to the optimum.
    pub join_prob: Option<f64>,
}

impl SweepSpec {
    pub fn new(
        rho_min: f64,
        rho_max: f64,
        rho_step: f64,
        mu: f64,
        reward: f64,
        cost: CostPolynomial,
    ) -> Self {
        Self {
            rho_min,
            rho_max,
            rho_step,
            mu,
            reward,
            cost,
            mode: AnalysisMode::Both,
            simulate: false,
            seed: 0,
            out: None,
            horizon_services: 20_000.0,
            warmup_frac: 0.05,
            replications: 10,
            threshold: None,
            join_prob: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.rho_min.is_finite() || self.rho_min <= 0.0 {
            return Err(Error::config(format!(
                "rho_min must be > 0, got {}",
                self.rho_min
            )));
        }
        if !self.rho_step.is_finite() || self.rho_step <= 0.0 {
            return Err(Error::config(format!(
                "rho_step must be > 0, got {}",
                self.rho_step
            )));
        }
        if self.rho_max < self.rho_min {
            return Err(Error::config(format!(
                "empty grid: rho_max {} is below rho_min {}",
                self.rho_max, self.rho_min
            )));
        }
        if !self.mu.is_finite() || self.mu <= 0.0 {
            return Err(Error::config(format!("mu must be > 0, got {}", self.mu)));
        }
        if !self.reward.is_finite() || self.reward <= 0.0 {
            return Err(Error::config(format!(
                "reward must be > 0, got {}",
                self.reward
            )));
        }
        if !self.horizon_services.is_finite() || self.horizon_services <= 0.0 {
            return Err(Error::config("horizon must be > 0".to_string()));
        }
        if !(0.0..1.0).contains(&self.warmup_frac) {
            return Err(Error::config(format!(
                "warmup fraction must be in [0, 1), got {}",
                self.warmup_frac
            )));
        }
        if self.replications == 0 {
            return Err(Error::config("need at least one replication".to_string()));
        }
        if let Some(q) = self.join_prob {
            if !(0.0..=1.0).contains(&q) {
                return Err(Error::config(format!(
                    "join probability must be in [0, 1], got {q}"
                )));
            }
        }
        Ok(())
    }

    /// The load grid `rho_min, rho_min + step, ..` up to `rho_max`.
    pub fn rho_grid(&self) -> Vec<f64> {
        let mut grid = Vec::new();
        let limit = self.rho_max + 1e-9 * self.rho_step;
        for i in 0.. {
            let rho = self.rho_min + i as f64 * self.rho_step;
            if rho > limit {
                break;
            }
            grid.push(rho);
        }
        grid
    }
}

/// Observable-regime cells of one sweep row.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservableCells {
    pub equilibrium_threshold: usize,
    pub socially_optimal_threshold: usize,
    pub revenue_optimal_threshold: usize,
    pub welfare_at_equilibrium: f64,
    pub welfare_at_social_optimum: f64,
    pub welfare_at_revenue_optimum: f64,
    pub revenue_at_social_optimum: f64,
    pub revenue_at_revenue_optimum: f64,
    pub optimal_price: f64,
}

/// Unobservable-regime cells of one sweep row.
#[derive(Debug, Clone, PartialEq)]
pub struct UnobservableCells {
    pub equilibrium_join_prob: f64,
    pub optimal_join_prob: f64,
    pub optimal_price: f64,
    pub optimal_revenue: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub rho: f64,
    pub lambda: f64,
    pub mu: f64,
    pub reward: f64,
    pub observable: Option<ObservableCells>,
    pub unobservable: Option<UnobservableCells>,
}

/// Column order is fixed; the cost coefficients are joined with `;` so the
/// cell never needs quoting.
pub const SWEEP_CSV_HEADER: &str = "rho,lambda,mu,R,cost coefficients,n_e,n_s,n_m,S^r(n_e),S^r(n_s),S^r(n_m),S^r_m(n_s),S^r_m(n_m),P_o,q_e,q_opt,P_u,S_q_opt";

#[derive(Debug, Clone, PartialEq)]
pub struct SweepDataset {
    pub cost_label: String,
    pub rows: Vec<SweepRow>,
}

impl SweepDataset {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(SWEEP_CSV_HEADER);
        out.push('\n');
        for row in &self.rows {
            let _ = write!(
                out,
                "{},{},{},{},{}",
                row.rho, row.lambda, row.mu, row.reward, self.cost_label
            );
            match &row.observable {
                Some(o) => {
                    let _ = write!(
                        out,
                        ",{},{},{},{},{},{},{},{},{}",
                        o.equilibrium_threshold,
                        o.socially_optimal_threshold,
                        o.revenue_optimal_threshold,
                        o.welfare_at_equilibrium,
                        o.welfare_at_social_optimum,
                        o.welfare_at_revenue_optimum,
                        o.revenue_at_social_optimum,
                        o.revenue_at_revenue_optimum,
                        o.optimal_price
                    );
                }
                None => out.push_str(",,,,,,,,,"),
            }
            match &row.unobservable {
                Some(u) => {
                    let _ = write!(
                        out,
                        ",{},{},{},{}",
                        u.equilibrium_join_prob,
                        u.optimal_join_prob,
                        u.optimal_price,
                        u.optimal_revenue
                    );
                }
                None => out.push_str(",,,,"),
            }
            out.push('\n');
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv()).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })
    }
}

/// Evaluate both regimes over the load grid. Rows come out in grid order.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepDataset> {
    spec.validate()?;
    let mut rows = Vec::new();
    for rho in spec.rho_grid() {
        let params = SystemParams::from_offered_load(rho, spec.mu, spec.reward)?;
        let observable = if spec.mode.observable() {
            let a = ObservableAnalysis::analyze(&params, &spec.cost)?;
            Some(ObservableCells {
                equilibrium_threshold: a.equilibrium_threshold,
                socially_optimal_threshold: a.socially_optimal_threshold,
                revenue_optimal_threshold: a.revenue_optimal_threshold,
                welfare_at_equilibrium: a.welfare_curve[a.equilibrium_threshold],
                welfare_at_social_optimum: a.welfare_curve[a.socially_optimal_threshold],
                welfare_at_revenue_optimum: a.welfare_curve[a.revenue_optimal_threshold],
                revenue_at_social_optimum: a.revenue_curve[a.socially_optimal_threshold],
                revenue_at_revenue_optimum: a.revenue_curve[a.revenue_optimal_threshold],
                optimal_price: a.optimal_price,
            })
        } else {
            None
        };
        let unobservable = if spec.mode.unobservable() {
            let a = UnobservableAnalysis::analyze(&params, &spec.cost);
            Some(UnobservableCells {
                equilibrium_join_prob: a.equilibrium_join_prob,
                optimal_join_prob: a.optimal_join_prob,
                optimal_price: a.optimal_price,
                optimal_revenue: a.optimal_revenue,
            })
        } else {
            None
        };
        rows.push(SweepRow {
            rho,
            lambda: params.lambda(),
            mu: spec.mu,
            reward: spec.reward,
            observable,
            unobservable,
        });
    }
    Ok(SweepDataset {
        cost_label: spec.cost.label(),
        rows,
    })
}
