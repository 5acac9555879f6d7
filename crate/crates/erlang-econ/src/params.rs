//! System-level parameters shared by every analysis.

use crate::error::{Error, Result};

/// Arrival rate, service rate, and service reward of the loss system.
///
/// The offered load `rho = lambda / mu` is computed once at construction so
/// every consumer sees the same value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    lambda: f64,
    mu: f64,
    reward: f64,
    rho: f64,
}

impl SystemParams {
    /// Build from the arrival rate `lambda`, service rate `mu`, and reward `R`.
    pub fn new(lambda: f64, mu: f64, reward: f64) -> Result<Self> {
        if !lambda.is_finite() || lambda <= 0.0 {
            return Err(Error::domain(format!("lambda must be > 0, got {lambda}")));
        }
        if !mu.is_finite() || mu <= 0.0 {
            return Err(Error::domain(format!("mu must be > 0, got {mu}")));
        }
        if !reward.is_finite() || reward <= 0.0 {
            return Err(Error::domain(format!("reward must be > 0, got {reward}")));
        }
        Ok(Self {
            lambda,
            mu,
            reward,
            rho: lambda / mu,
        })
    }

    /// Build from the offered load `rho` and service rate `mu`; the arrival
    /// rate is `rho * mu`.
    pub fn from_offered_load(rho: f64, mu: f64, reward: f64) -> Result<Self> {
        if !rho.is_finite() || rho <= 0.0 {
            return Err(Error::domain(format!("rho must be > 0, got {rho}")));
        }
        Self::new(rho * mu, mu, reward)
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn reward(&self) -> f64 {
        self.reward
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rho_is_lambda_over_mu() {
        let p = SystemParams::new(20.0, 1.0 / 60.0, 400.0).unwrap();
        assert_eq!(p.rho(), 20.0 / (1.0 / 60.0));
        assert_eq!(p.rho(), 1200.0);
    }

    #[test]
    fn from_offered_load_round_trips() {
        let p = SystemParams::from_offered_load(2.0, 0.5, 10.0).unwrap();
        assert_eq!(p.lambda(), 1.0);
        assert_eq!(p.rho(), 2.0);
    }

    #[test]
    fn rejects_nonpositive_inputs() {
        assert!(SystemParams::new(0.0, 1.0, 1.0).is_err());
        assert!(SystemParams::new(1.0, -1.0, 1.0).is_err());
        assert!(SystemParams::new(1.0, 1.0, 0.0).is_err());
        assert!(SystemParams::new(f64::NAN, 1.0, 1.0).is_err());
    }
}
