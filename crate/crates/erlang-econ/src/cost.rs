//! Polynomial congestion costs.

use crate::error::{Error, Result};

/// Congestion cost `c(x) = C_1 x + C_2 x^2 + ... + C_d x^d`.
///
/// There is no constant term, so `c(0) = 0`: a customer entering an empty
/// system pays nothing. Coefficients must be nonnegative with at least one
/// strictly positive, which makes `c` strictly increasing on the nonnegative
/// integers.
#[derive(Debug, Clone, PartialEq)]
pub struct CostPolynomial {
    /// `coeffs[i]` is the coefficient of `x^(i+1)`.
    coeffs: Vec<f64>,
}

impl CostPolynomial {
    /// Build from the coefficients `[C_1, C_2, ...]`. Trailing zeros are
    /// dropped so `degree()` reflects the true leading term.
    pub fn new(mut coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.iter().any(|c| !c.is_finite() || *c < 0.0) {
            return Err(Error::domain(
                "cost coefficients must be finite and nonnegative".to_string(),
            ));
        }
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::domain(
                "at least one cost coefficient must be positive".to_string(),
            ));
        }
        Ok(Self { coeffs })
    }

    /// Linear cost `C_1 x`.
    pub fn linear(c1: f64) -> Result<Self> {
        Self::new(vec![c1])
    }

    /// Quadratic cost `C_1 x + C_2 x^2`.
    pub fn quadratic(c1: f64, c2: f64) -> Result<Self> {
        Self::new(vec![c1, c2])
    }

    /// Evaluate `c(x)` by Horner's rule.
    pub fn eval(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for &c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc * x
    }

    /// Degree of the leading term.
    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficients `[C_1, ..., C_d]` without trailing zeros.
    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }

    /// Marginal aggregate cost `d/dx [x c(x)] = sum_i (i+1) C_i x^i`.
    ///
    /// This is the quantity a revenue maximizer trades off against the reward
    /// in the unobservable regime.
    pub fn aggregate_marginal(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            acc = acc * x + (i as f64 + 2.0) * c;
        }
        acc * x
    }

    /// Render as a short label, e.g. `1;0.5`.
    pub fn label(&self) -> String {
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(";")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_matches_direct_sum() {
        let c = CostPolynomial::new(vec![1.0, 0.5, 0.0, 2.0]).unwrap();
        // trailing zero kept because a positive coefficient follows it
        assert_eq!(c.degree(), 4);
        let x: f64 = 3.0;
        let direct = 1.0 * x + 0.5 * x * x + 2.0 * x.powi(4);
        assert!((c.eval(x) - direct).abs() < 1e-12 * direct);
    }

    #[test]
    fn cost_of_zero_is_zero() {
        let c = CostPolynomial::quadratic(0.0, 0.01).unwrap();
        assert_eq!(c.eval(0.0), 0.0);
    }

    #[test]
    fn trailing_zeros_trimmed() {
        let c = CostPolynomial::quadratic(1.0, 0.0).unwrap();
        assert_eq!(c.degree(), 1);
        assert_eq!(c.coefficients(), &[1.0]);
    }

    #[test]
    fn rejects_degenerate_polynomials() {
        assert!(CostPolynomial::new(vec![]).is_err());
        assert!(CostPolynomial::new(vec![0.0, 0.0]).is_err());
        assert!(CostPolynomial::new(vec![-1.0]).is_err());
        assert!(CostPolynomial::new(vec![f64::NAN]).is_err());
    }

    #[test]
    fn aggregate_marginal_is_derivative_of_x_cost() {
        let c = CostPolynomial::quadratic(1.0, 0.25).unwrap();
        // d/dx [x (x + 0.25 x^2)] = 2x + 0.75 x^2
        let x = 1.7;
        let expect = 2.0 * x + 0.75 * x * x;
        assert!((c.aggregate_marginal(x) - expect).abs() < 1e-12);
    }
}
