//! Service-time distributions, all parameterized to a common mean so the
//! insensitivity of the loss system can be exercised directly.

use crate::error::{Error, Result};
use rand::Rng;
use rand_distr::{Distribution, Exp, LogNormal, Uniform};

/// Shape of the service-time law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ServiceKind {
    Exponential,
    Deterministic,
    /// Uniform on `[0, 2/mu]`.
    Uniform,
    /// Lognormal with log-scale `sigma`; the location parameter is solved so
    /// the mean comes out to `1/mu`.
    LogNormal { sigma: f64 },
}

impl ServiceKind {
    pub fn label(&self) -> &'static str {
        match self {
            ServiceKind::Exponential => "exponential",
            ServiceKind::Deterministic => "deterministic",
            ServiceKind::Uniform => "uniform",
            ServiceKind::LogNormal { .. } => "lognormal",
        }
    }
}

/// A service-time sampler with mean `1/mu` by construction.
#[derive(Debug, Clone)]
pub struct ServiceDistribution {
    kind: ServiceKind,
    mean: f64,
    sampler: Sampler,
}

#[derive(Debug, Clone)]
enum Sampler {
    Exponential(Exp<f64>),
    Deterministic(f64),
    Uniform(Uniform<f64>),
    LogNormal(LogNormal<f64>),
}

impl ServiceDistribution {
    pub fn new(kind: ServiceKind, mu: f64) -> Result<Self> {
        if !mu.is_finite() || mu <= 0.0 {
            return Err(Error::domain(format!("service rate must be > 0, got {mu}")));
        }
        let mean = 1.0 / mu;
        let sampler = match kind {
            ServiceKind::Exponential => Sampler::Exponential(
                Exp::new(mu).map_err(|e| Error::domain(format!("exponential: {e}")))?,
            ),
            ServiceKind::Deterministic => Sampler::Deterministic(mean),
            ServiceKind::Uniform => Sampler::Uniform(
                Uniform::new(0.0, 2.0 * mean)
                    .map_err(|e| Error::domain(format!("uniform: {e}")))?,
            ),
            ServiceKind::LogNormal { sigma } => {
                if !sigma.is_finite() || sigma <= 0.0 {
                    return Err(Error::domain(format!(
                        "lognormal sigma must be > 0, got {sigma}"
                    )));
                }
                let location = mean.ln() - 0.5 * sigma * sigma;
                Sampler::LogNormal(
                    LogNormal::new(location, sigma)
                        .map_err(|e| Error::domain(format!("lognormal: {e}")))?,
                )
            }
        };
        Ok(Self {
            kind,
            mean,
            sampler,
        })
    }

    pub fn kind(&self) -> ServiceKind {
        self.kind
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Draw a strictly positive service time.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        loop {
            let s = match &self.sampler {
                Sampler::Exponential(d) => d.sample(rng),
                Sampler::Deterministic(v) => *v,
                Sampler::Uniform(d) => d.sample(rng),
                Sampler::LogNormal(d) => d.sample(rng),
            };
            if s > 0.0 {
                return s;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn every_kind_hits_the_requested_mean() {
        let mu = 2.5;
        let kinds = [
            ServiceKind::Exponential,
            ServiceKind::Deterministic,
            ServiceKind::Uniform,
            ServiceKind::LogNormal { sigma: 1.0 },
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for kind in kinds {
            let d = ServiceDistribution::new(kind, mu).unwrap();
            assert!((d.mean() - 1.0 / mu).abs() < 1e-12);
            let n = 200_000;
            let sum: f64 = (0..n).map(|_| d.sample(&mut rng)).sum();
            let empirical = sum / n as f64;
            assert!(
                (empirical - d.mean()).abs() < 0.02 * d.mean(),
                "{}: empirical mean {empirical} vs {}",
                kind.label(),
                d.mean()
            );
        }
    }

    #[test]
    fn samples_are_strictly_positive() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let d = ServiceDistribution::new(ServiceKind::Uniform, 1.0).unwrap();
        for _ in 0..10_000 {
            assert!(d.sample(&mut rng) > 0.0);
        }
    }

    #[test]
    fn rejects_invalid_parameters() {
        assert!(ServiceDistribution::new(ServiceKind::Exponential, 0.0).is_err());
        assert!(ServiceDistribution::new(ServiceKind::LogNormal { sigma: -1.0 }, 1.0).is_err());
    }
}
