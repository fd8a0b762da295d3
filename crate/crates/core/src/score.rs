//! Score functions for M-statistics.
//!
//! Only nondecreasing, skew-symmetric scores are allowed, which is what makes
//! every M-statistic in this crate monotone in its location/slope argument.

use crate::error::{Error, Result};

/// Clip constant used when none is given: the 0.9 quantile of N(0, 1).
pub const DEFAULT_HUBER_K: f64 = 1.28;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScoreFunction {
    /// Huber's score, linear on `[-k, k]` and constant outside.
    Huber { k: f64 },
    /// Least-squares score `psi(u) = u`.
    Identity,
}

impl Default for ScoreFunction {
    fn default() -> Self {
        ScoreFunction::Huber { k: DEFAULT_HUBER_K }
    }
}

impl ScoreFunction {
    /// Huber score with clip constant `k`, which must be positive and finite.
    pub fn huber(k: f64) -> Result<Self> {
        if !(k > 0.0 && k.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "huber k must be positive, got {k}"
            )));
        }
        Ok(ScoreFunction::Huber { k })
    }

    pub fn identity() -> Self {
        ScoreFunction::Identity
    }

    /// The clip constant, if this score has one.
    pub fn clip(&self) -> Option<f64> {
        match *self {
            ScoreFunction::Huber { k } => Some(k),
            ScoreFunction::Identity => None,
        }
    }

    #[inline]
    pub fn psi(&self, u: f64) -> f64 {
        match *self {
            ScoreFunction::Huber { k } => u.clamp(-k, k),
            ScoreFunction::Identity => u,
        }
    }

    /// Almost-everywhere derivative of [`psi`](Self::psi). At the kinks
    /// `|u| = k` the Huber derivative is taken as 1.
    #[inline]
    pub fn psi_prime(&self, u: f64) -> f64 {
        match *self {
            ScoreFunction::Huber { k } => {
                if u.abs() <= k {
                    1.0
                } else {
                    0.0
                }
            }
            ScoreFunction::Identity => 1.0,
        }
    }
}

impl std::fmt::Display for ScoreFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ScoreFunction::Huber { k } => write!(f, "huber(k={k})"),
            ScoreFunction::Identity => f.write_str("identity"),
        }
    }
}
