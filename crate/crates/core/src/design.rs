//! Regressor-derived constants shared by every variance, critical value and
//! power expression.

use crate::error::{Error, Result};

/// A regressor sequence together with its summary constants.
///
/// The asymptotic formulas want the limits of `cbar_n` and `cstar2_n / n`;
/// the finite-n values are used as plug-ins.
#[derive(Debug, Clone, PartialEq)]
pub struct Design {
    c: Vec<f64>,
    sum_sq: f64,
    /// Mean of the regressor.
    pub cbar_n: f64,
    /// Centered sum of squares, `sum c_i^2 - n cbar_n^2`.
    pub cstar2_n: f64,
    /// `n - n^2 cbar_n^2 / sum c_i^2`, the UT variance factor.
    pub c1_n: f64,
    /// PT variance factor; equal to `cstar2_n`.
    pub c3_n: f64,
}

impl Design {
    pub fn new(c: Vec<f64>) -> Result<Self> {
        let n = c.len();
        if n < 2 {
            return Err(Error::EmptyInput(n));
        }
        if c.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParams(
                "regressor contains non-finite values".into(),
            ));
        }
        let nf = n as f64;
        let cbar_n = c.iter().sum::<f64>() / nf;
        let sum_sq: f64 = c.iter().map(|v| v * v).sum();
        // Two-pass centered sum; the textbook form loses everything to cancellation
        // when the regressor has a large offset.
        let cstar2_n: f64 = c.iter().map(|v| (v - cbar_n) * (v - cbar_n)).sum();
        if !(cstar2_n > 0.0) || cstar2_n <= 1e-14 * sum_sq {
            return Err(Error::DegenerateDesign { cstar2: cstar2_n });
        }
        let c1_n = nf * cstar2_n / (cstar2_n + nf * cbar_n * cbar_n);
        Ok(Design {
            c,
            sum_sq,
            cbar_n,
            cstar2_n,
            c1_n,
            c3_n: cstar2_n,
        })
    }

    pub fn n(&self) -> usize {
        self.c.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.c
    }

    pub fn sum_sq(&self) -> f64 {
        self.sum_sq
    }

    /// Limit mean used in the asymptotic formulas.
    pub fn cbar_limit(&self) -> f64 {
        self.cbar_n
    }

    /// Limit of `cstar2_n / n`.
    pub fn cstar2_limit(&self) -> f64 {
        self.cstar2_n / self.n() as f64
    }

    pub fn cstar_limit(&self) -> f64 {
        self.cstar2_limit().sqrt()
    }

    /// `max_i (c_i - cbar_n)^2 / cstar2_n`. Should be small for the asymptotics
    /// to be trustworthy; reported, never enforced.
    pub fn max_leverage(&self) -> f64 {
        self.c
            .iter()
            .map(|v| (v - self.cbar_n).powi(2))
            .fold(0.0, f64::max)
            / self.cstar2_n
    }
}
