//! Discrete-event simulation of the loss system and its thinned unobservable
//! counterpart. Serves as an independent oracle for the analytic formulas:
//! nothing here touches the Erlang kernel.

mod engine;
mod service;

pub use service::{ServiceDistribution, ServiceKind};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cost::CostPolynomial;
use crate::error::{Error, Result};
use crate::params::SystemParams;

/// How arrivals are admitted.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AdmissionPolicy {
    /// Join exactly when fewer than this many are in the system.
    Threshold(usize),
    /// Join independently with this probability (unobservable regime).
    JoinProbability(f64),
}

/// One simulation experiment: replications differ only in their random
/// streams, which are derived from the master seed.
#[derive(Debug, Clone)]
pub struct SimConfig {
    pub params: SystemParams,
    pub cost: CostPolynomial,
    pub policy: AdmissionPolicy,
    pub service: ServiceDistribution,
    /// Simulated time per replication.
    pub horizon: f64,
    /// Initial stretch discarded from every statistic.
    pub warmup: f64,
    pub seed: u64,
    pub replications: usize,
}

impl SimConfig {
    /// Warmup defaults to 5% of the horizon.
    pub fn new(
        params: SystemParams,
        cost: CostPolynomial,
        policy: AdmissionPolicy,
        service: ServiceDistribution,
        horizon: f64,
        seed: u64,
        replications: usize,
    ) -> Self {
        Self {
            params,
            cost,
            policy,
            service,
            horizon,
            warmup: 0.05 * horizon,
            seed,
            replications,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.horizon.is_finite() || !self.warmup.is_finite() {
            return Err(Error::config("horizon and warmup must be finite"));
        }
        if self.warmup < 0.0 || self.horizon <= self.warmup {
            return Err(Error::config(format!(
                "need horizon > warmup >= 0, got horizon {} warmup {}",
                self.horizon, self.warmup
            )));
        }
        if self.replications == 0 {
            return Err(Error::config("need at least one replication"));
        }
        if let AdmissionPolicy::JoinProbability(q) = self.policy {
            if !(0.0..=1.0).contains(&q) {
                return Err(Error::config(format!(
                    "joining probability must be in [0, 1], got {q}"
                )));
            }
        }
        Ok(())
    }
}

/// A point estimate with its across-replication standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub std_error: f64,
}

impl Estimate {
    fn from_samples(samples: &[f64]) -> Self {
        let k = samples.len();
        let mean = samples.iter().sum::<f64>() / k as f64;
        let std_error = if k >= 2 {
            let var =
                samples.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (k as f64 - 1.0);
            (var / k as f64).sqrt()
        } else {
            0.0
        };
        Self {
            value: mean,
            std_error,
        }
    }

    /// Standardized distance from a reference value; infinite when the
    /// spread is zero but the estimate is off.
    pub fn z_score(&self, reference: f64) -> f64 {
        let diff = self.value - reference;
        if self.std_error > 0.0 {
            diff / self.std_error
        } else if diff == 0.0 {
            0.0
        } else {
            f64::INFINITY * diff.signum()
        }
    }
}

/// Merged statistics over all replications.
#[derive(Debug, Clone, PartialEq)]
pub struct SimResult {
    /// Time-average occupancy distribution.
    pub occupancy_pmf: Vec<f64>,
    /// Distribution of the occupancy seen by arrivals.
    pub arrival_seen_pmf: Vec<f64>,
    /// Time-average number in system, with its across-replication spread.
    pub mean_occupancy: Estimate,
    /// Admitted arrivals per time unit.
    pub joining_rate: f64,
    pub welfare_estimate: Estimate,
    pub revenue_estimate: Estimate,
}

/// Simulate the threshold-admission system.
pub fn simulate_observable(config: &SimConfig) -> Result<SimResult> {
    config.validate()?;
    let threshold = match config.policy {
        AdmissionPolicy::Threshold(n) => n,
        AdmissionPolicy::JoinProbability(_) => {
            return Err(Error::config(
                "simulate_observable needs a threshold policy",
            ))
        }
    };
    run(config, threshold, |rep, cfg| {
        if threshold == 0 {
            return 0.0;
        }
        let price = cfg.params.reward() - cfg.cost.eval((threshold - 1) as f64);
        rep.joining_rate() * price
    })
}

/// Simulate the Bernoulli-thinned system. Occupancy is unbounded in the
/// model; a safety cap of `20 rho` bounds the state vectors.
pub fn simulate_unobservable(config: &SimConfig) -> Result<SimResult> {
    config.validate()?;
    match config.policy {
        AdmissionPolicy::JoinProbability(_) => {}
        AdmissionPolicy::Threshold(_) => {
            return Err(Error::config(
                "simulate_unobservable needs a joining-probability policy",
            ))
        }
    }
    let cap = ((20.0 * config.params.rho()).ceil() as usize).max(16);
    run(config, cap, |rep, cfg| {
        let price = cfg.params.reward() - cfg.cost.eval(rep.mean_occupancy());
        rep.joining_rate() * price
    })
}

fn run(
    config: &SimConfig,
    cap: usize,
    revenue_of: impl Fn(&engine::Replication, &SimConfig) -> f64,
) -> Result<SimResult> {
    let reps = config.replications;
    let mut state_time = vec![0.0_f64; cap + 1];
    let mut seen_counts = vec![0u64; cap + 1];
    let mut joining_rates = Vec::with_capacity(reps);
    let mut welfare_samples = Vec::with_capacity(reps);
    let mut revenue_samples = Vec::with_capacity(reps);
    let mut mean_samples = Vec::with_capacity(reps);

    for rep in 0..reps {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        rng.set_stream(rep as u64 + 1);
        let outcome = engine::run_replication(config, cap, &mut rng);
        for (acc, t) in state_time.iter_mut().zip(&outcome.state_time) {
            *acc += t;
        }
        for (acc, c) in seen_counts.iter_mut().zip(&outcome.seen_counts) {
            *acc += c;
        }
        joining_rates.push(outcome.joining_rate());
        let welfare = if outcome.arrivals > 0 {
            config.params.lambda() * outcome.utility_sum / outcome.arrivals as f64
        } else {
            0.0
        };
        welfare_samples.push(welfare);
        revenue_samples.push(revenue_of(&outcome, config));
        mean_samples.push(outcome.mean_occupancy());
    }

    let total_time: f64 = state_time.iter().sum();
    let occupancy_pmf: Vec<f64> = state_time.iter().map(|t| t / total_time).collect();
    let total_seen: u64 = seen_counts.iter().sum();
    let arrival_seen_pmf: Vec<f64> = seen_counts
        .iter()
        .map(|c| {
            if total_seen > 0 {
                *c as f64 / total_seen as f64
            } else {
                0.0
            }
        })
        .collect();

    Ok(SimResult {
        occupancy_pmf,
        arrival_seen_pmf,
        mean_occupancy: Estimate::from_samples(&mean_samples),
        joining_rate: joining_rates.iter().sum::<f64>() / reps as f64,
        welfare_estimate: Estimate::from_samples(&welfare_samples),
        revenue_estimate: Estimate::from_samples(&revenue_samples),
    })
}

/// Total-variation distance between two distributions; the shorter one is
/// zero-padded.
pub fn total_variation(p: &[f64], q: &[f64]) -> f64 {
    let len = p.len().max(q.len());
    let mut acc = 0.0;
    for i in 0..len {
        let a = p.get(i).copied().unwrap_or(0.0);
        let b = q.get(i).copied().unwrap_or(0.0);
        acc += (a - b).abs();
    }
    0.5 * acc
}
