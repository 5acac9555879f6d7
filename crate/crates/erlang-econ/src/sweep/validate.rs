//! Simulator-versus-analytic validation runs.
//!
//! For every grid point the loss system is simulated under each service-time
//! law at the chosen threshold, and the thinned system at the chosen joining
//! probability. Total-variation distances against the stationary law are
//! reported, and estimator z-scores against the analytic welfare and revenue
//! drive the pass/fail verdict.

use std::fmt::Write as _;
use std::path::Path;

use crate::erlang;
use crate::error::{Error, Result};
use crate::observable::{self, ObservableAnalysis};
use crate::params::SystemParams;
use crate::sim::{
    simulate_observable, simulate_unobservable, total_variation, AdmissionPolicy, ServiceDistribution,
    ServiceKind, SimConfig,
};
use crate::sweep::SweepSpec;
use crate::unobservable::{self, UnobservableAnalysis};

/// Any |z| above this fails the run.
pub const Z_LIMIT: f64 = 4.0;

const SERVICE_KINDS: [ServiceKind; 4] = [
    ServiceKind::Exponential,
    ServiceKind::Deterministic,
    ServiceKind::Uniform,
    ServiceKind::LogNormal { sigma: 1.0 },
];

#[derive(Debug, Clone)]
pub struct ValidationRow {
    pub rho: f64,
    pub regime: &'static str,
    pub service: &'static str,
    pub policy: String,
    /// Total variation between the simulated and stationary occupancy laws.
    pub tv: f64,
    pub welfare_z: f64,
    pub revenue_z: f64,
}

#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub rows: Vec<ValidationRow>,
}

impl ValidationReport {
    pub fn max_abs_z(&self) -> f64 {
        self.rows
            .iter()
            .flat_map(|r| [r.welfare_z.abs(), r.revenue_z.abs()])
            .fold(0.0, f64::max)
    }

    pub fn passed(&self) -> bool {
        self.max_abs_z() <= Z_LIMIT
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("rho,regime,service,policy,tv,z_welfare,z_revenue\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                r.rho, r.regime, r.service, r.policy, r.tv, r.welfare_z, r.revenue_z
            );
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv()).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:>10} {:>13} {:>14} {:>14} {:>10} {:>10} {:>10}",
            "rho", "regime", "service", "policy", "tv", "z_welfare", "z_revenue"
        );
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:>10} {:>13} {:>14} {:>14} {:>10.5} {:>10.2} {:>10.2}",
                r.rho, r.regime, r.service, r.policy, r.tv, r.welfare_z, r.revenue_z
            );
        }
        let _ = writeln!(
            out,
            "max |z| = {:.2} (limit {Z_LIMIT}): {}",
            self.max_abs_z(),
            if self.passed() { "PASS" } else { "FAIL" }
        );
        out
    }
}

pub fn run_validation(spec: &SweepSpec) -> Result<ValidationReport> {
    spec.validate()?;
    let mut rows = Vec::new();
    for (point, rho) in spec.rho_grid().into_iter().enumerate() {
        let params = SystemParams::from_offered_load(rho, spec.mu, spec.reward)?;
        let horizon = spec.horizon_services / spec.mu;
        let warmup = spec.warmup_frac * horizon;

        if spec.mode.observable() {
            let threshold = match spec.threshold {
                Some(t) => t,
                None => {
                    ObservableAnalysis::analyze(&params, &spec.cost)?.socially_optimal_threshold
                }
            };
            let welfare_ref = observable::social_welfare(&params, &spec.cost, threshold)?;
            let revenue_ref = if threshold >= 1 {
                observable::revenue(&params, &spec.cost, threshold)?
            } else {
                0.0
            };
            let stationary = erlang::occupancy_distribution(rho, threshold)?;
            for (k, kind) in SERVICE_KINDS.into_iter().enumerate() {
                let mut config = SimConfig::new(
                    params,
                    spec.cost.clone(),
                    AdmissionPolicy::Threshold(threshold),
                    ServiceDistribution::new(kind, spec.mu)?,
                    horizon,
                    spec.seed.wrapping_add((point * 8 + k) as u64),
                    spec.replications,
                );
                config.warmup = warmup;
                let sim = simulate_observable(&config)?;
                rows.push(ValidationRow {
                    rho,
                    regime: "observable",
                    service: kind.label(),
                    policy: format!("n={threshold}"),
                    tv: total_variation(&sim.occupancy_pmf, stationary.probs()),
                    welfare_z: sim.welfare_estimate.z_score(welfare_ref),
                    revenue_z: sim.revenue_estimate.z_score(revenue_ref),
                });
            }
        }

        if spec.mode.unobservable() {
            let q = match spec.join_prob {
                Some(q) => q,
                None => UnobservableAnalysis::analyze(&params, &spec.cost).optimal_join_prob,
            };
            let revenue_ref = unobservable::revenue_unobservable(&params, &spec.cost, q)?;
            let mut config = SimConfig::new(
                params,
                spec.cost.clone(),
                AdmissionPolicy::JoinProbability(q),
                ServiceDistribution::new(ServiceKind::Exponential, spec.mu)?,
                horizon,
                spec.seed.wrapping_add((point * 8 + 7) as u64),
                spec.replications,
            );
            config.warmup = warmup;
            let sim = simulate_unobservable(&config)?;
            let cap = sim.occupancy_pmf.len() - 1;
            let tv = if rho * q > 0.0 {
                let stationary = erlang::occupancy_distribution(rho * q, cap)?;
                total_variation(&sim.occupancy_pmf, stationary.probs())
            } else {
                total_variation(&sim.occupancy_pmf, &[1.0])
            };
            let z = sim.revenue_estimate.z_score(revenue_ref);
            rows.push(ValidationRow {
                rho,
                regime: "unobservable",
                service: "exponential",
                policy: format!("q={q:.6}"),
                tv,
                welfare_z: z,
                revenue_z: z,
            });
        }
    }
    Ok(ValidationReport { rows })
}
