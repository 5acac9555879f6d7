//! Truncated-Poisson kernel for the Erlang loss system.
//!
//! Everything here is evaluated with the Erlang-B ratio recursion and
//! ratio-chained probabilities, never with raw `rho^m / m!` terms, so the
//! functions stay finite for loads up to about 1e9 and truncations up to
//! about 1e6 where the naive sums overflow almost immediately.

use crate::error::{Error, Result};

/// Largest power accepted by [`partial_power_moment`]. Higher powers push the
/// moment accumulation into the regime where f64 cancellation dominates.
pub const MAX_MOMENT_POWER: usize = 12;

/// Probabilities below this are flushed to zero after normalization; they are
/// denormal noise from the ratio chain.
const PROB_FLUSH: f64 = 1e-300;

fn check_rho(rho: f64) -> Result<()> {
    if !rho.is_finite() || rho <= 0.0 {
        return Err(Error::domain(format!("offered load must be > 0, got {rho}")));
    }
    Ok(())
}

/// Stationary occupancy law of the loss system truncated at `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct OccupancyDistribution {
    threshold: usize,
    probs: Vec<f64>,
    mean: f64,
}

impl OccupancyDistribution {
    pub fn threshold(&self) -> usize {
        self.threshold
    }

    /// `p_0 ..= p_n`; sums to one.
    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn prob(&self, j: usize) -> f64 {
        self.probs[j]
    }

    /// Mean occupancy, computed as `sum m p_m`.
    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Blocking probability `p_n`.
    pub fn blocking(&self) -> f64 {
        self.probs[self.threshold]
    }
}

/// Stationary distribution `p_j = (rho^j / j!) / sum_{k<=n} rho^k / k!`.
///
/// The weights are chained from the modal state outward, so every
/// intermediate value is a true probability ratio bounded by one.
pub fn occupancy_distribution(rho: f64, n: usize) -> Result<OccupancyDistribution> {
    check_rho(rho)?;
    let mut weights = vec![0.0_f64; n + 1];
    let anchor = (rho.floor() as usize).min(n);
    weights[anchor] = 1.0;
    for m in (1..=anchor).rev() {
        weights[m - 1] = weights[m] * m as f64 / rho;
    }
    for m in anchor..n {
        weights[m + 1] = weights[m] * rho / (m as f64 + 1.0);
    }
    let total: f64 = weights.iter().sum();
    let mut mean = 0.0;
    for (m, w) in weights.iter_mut().enumerate() {
        *w /= total;
        if *w < PROB_FLUSH {
            *w = 0.0;
        }
        mean += m as f64 * *w;
    }
    Ok(OccupancyDistribution {
        threshold: n,
        probs: weights,
        mean,
    })
}

/// Erlang-B blocking probability via the stable recursion
/// `B(k) = rho B(k-1) / (k + rho B(k-1))`, with `B(0) = 1`.
pub fn erlang_b(rho: f64, n: usize) -> Result<f64> {
    check_rho(rho)?;
    let mut b = 1.0_f64;
    for k in 1..=n {
        b = rho * b / (k as f64 + rho * b);
    }
    Ok(b)
}

/// Mean occupancy `E(L_n) = rho (1 - B(n))`, zero for `n = 0`.
pub fn expected_occupancy(rho: f64, n: usize) -> Result<f64> {
    Ok(rho * (1.0 - erlang_b(rho, n)?))
}

/// Truncated power moment `sum_{m=0}^{cutoff} m^i p_m` under the
/// `n`-truncated distribution.
///
/// Supported powers are `1 ..= MAX_MOMENT_POWER`.
pub fn partial_power_moment(rho: f64, n: usize, power: usize, cutoff: usize) -> Result<f64> {
    check_rho(rho)?;
    if power == 0 || power > MAX_MOMENT_POWER {
        return Err(Error::domain(format!(
            "moment power must be in 1..={MAX_MOMENT_POWER}, got {power}"
        )));
    }
    if cutoff > n {
        return Err(Error::domain(format!(
            "cutoff {cutoff} exceeds truncation {n}"
        )));
    }
    let mut sweep = TruncationSweep::new(rho, power);
    for _ in 0..cutoff {
        sweep.step();
    }
    let at_cutoff = sweep.moment(power);
    // Rescale from the cutoff truncation to the full one:
    // W_c / W_n = prod_{k=c+1..n} (1 - B_k).
    let mut scale = 1.0;
    for _ in cutoff..n {
        sweep.step();
        scale *= 1.0 - sweep.blocking();
    }
    Ok(at_cutoff * scale)
}

/// Incremental sweep over truncation levels.
///
/// After `n` calls to [`step`](Self::step) it holds the blocking probability
/// `B_n`, the mean `E(L_n)`, and the normalized moments
/// `M_i(n) = sum_{m<=n} m^i p_m^{(n)}` for `i = 1..=powers`, all updated in
/// O(powers) per step via
/// `M_i(n) = M_i(n-1) (1 - B_n) + n^i B_n`.
#[derive(Debug, Clone)]
pub(crate) struct TruncationSweep {
    rho: f64,
    level: usize,
    blocking: f64,
    moments: Vec<f64>,
}

impl TruncationSweep {
    pub(crate) fn new(rho: f64, powers: usize) -> Self {
        Self {
            rho,
            level: 0,
            blocking: 1.0,
            moments: vec![0.0; powers],
        }
    }

    pub(crate) fn step(&mut self) {
        self.level += 1;
        let n = self.level as f64;
        self.blocking = self.rho * self.blocking / (n + self.rho * self.blocking);
        let keep = 1.0 - self.blocking;
        let mut pow = 1.0;
        for m in self.moments.iter_mut() {
            pow *= n;
            *m = *m * keep + pow * self.blocking;
        }
    }

    #[cfg(test)]
    pub(crate) fn level(&self) -> usize {
        self.level
    }

    pub(crate) fn blocking(&self) -> f64 {
        self.blocking
    }

    pub(crate) fn mean(&self) -> f64 {
        self.rho * (1.0 - self.blocking)
    }

    /// `M_i` at the current level; `power` must be `1..=powers`.
    pub(crate) fn moment(&self, power: usize) -> f64 {
        self.moments[power - 1]
    }

    pub(crate) fn moments(&self) -> &[f64] {
        &self.moments
    }
}
