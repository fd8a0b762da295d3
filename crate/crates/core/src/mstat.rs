//! M-statistics, the two constrained M-estimators and the plug-in estimates
//! of the score variance and slope.

use crate::design::Design;
use crate::error::{Error, Result};
use crate::roots::{median, monotone_root};
use crate::score::ScoreFunction;

/// Responses paired with a regressor design.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    x: Vec<f64>,
    design: Design,
}

impl Sample {
    pub fn new(x: Vec<f64>, design: Design) -> Result<Self> {
        if x.len() != design.n() {
            return Err(Error::LengthMismatch {
                responses: x.len(),
                regressors: design.n(),
            });
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParams(
                "responses contain non-finite values".into(),
            ));
        }
        Ok(Sample { x, design })
    }

    /// Builds the design from `c` and pairs it with `x`.
    pub fn from_columns(x: Vec<f64>, c: Vec<f64>) -> Result<Self> {
        if x.len() != c.len() {
            return Err(Error::LengthMismatch {
                responses: x.len(),
                regressors: c.len(),
            });
        }
        Sample::new(x, Design::new(c)?)
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn responses(&self) -> &[f64] {
        &self.x
    }

    pub fn regressors(&self) -> &[f64] {
        self.design.values()
    }

    pub fn design(&self) -> &Design {
        &self.design
    }

    /// Re-expresses the sample so that testing `beta = beta0` becomes testing
    /// `beta = 0`: `x_i <- x_i - beta0 c_i`.
    pub fn shift_slope(&self, beta0: f64) -> Sample {
        if beta0 == 0.0 {
            return self.clone();
        }
        let x = self
            .x
            .iter()
            .zip(self.regressors())
            .map(|(x, c)| x - beta0 * c)
            .collect();
        Sample {
            x,
            design: self.design.clone(),
        }
    }

    fn pairs(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.x
            .iter()
            .copied()
            .zip(self.design.values().iter().copied())
    }
}

/// `M_n1(a, b) = sum psi(x_i - a - b c_i)`.
pub fn m1(f: &ScoreFunction, s: &Sample, a: f64, b: f64) -> f64 {
    s.pairs().map(|(x, c)| f.psi(x - a - b * c)).sum()
}

/// `M_n2(a, b) = sum c_i psi(x_i - a - b c_i)`.
pub fn m2(f: &ScoreFunction, s: &Sample, a: f64, b: f64) -> f64 {
    m2_raw(f, s.responses(), s.regressors(), a, b)
}

/// [`m2`] on raw columns, for regressors that would not pass design checks.
pub fn m2_raw(f: &ScoreFunction, x: &[f64], c: &[f64], a: f64, b: f64) -> f64 {
    x.iter()
        .zip(c)
        .map(|(&x, &c)| c * f.psi(x - a - b * c))
        .sum()
}

fn robust_scale(values: &mut [f64], center: f64) -> f64 {
    for v in values.iter_mut() {
        *v = (*v - center).abs();
    }
    let mad = median(values).unwrap_or(0.0) * 1.4826;
    if mad > 0.0 {
        mad
    } else {
        1.0
    }
}

/// Slope estimate under `theta = 0`: the midpoint of the zero set of
/// `b -> M_n2(0, b)`.
pub fn beta_tilde(f: &ScoreFunction, s: &Sample) -> Result<f64> {
    // Start from the median of the ratios x_i / c_i.
    let mut ratios: Vec<f64> = s
        .pairs()
        .filter(|&(_, c)| c != 0.0)
        .map(|(x, c)| x / c)
        .collect();
    let guess = median(&mut ratios).unwrap_or(0.0);
    let scale = robust_scale(&mut ratios, guess);
    monotone_root(|b| m2(f, s, 0.0, b), guess, scale)
}

/// Intercept estimate under `beta = 0`: the midpoint of the zero set of
/// `a -> M_n1(a, 0)`.
pub fn theta_tilde(f: &ScoreFunction, s: &Sample) -> Result<f64> {
    let mut x = s.responses().to_vec();
    let guess = median(&mut x).unwrap_or(0.0);
    let scale = robust_scale(&mut x, guess);
    monotone_root(|a| m1(f, s, a, 0.0), guess, scale)
}

/// Constrained estimates plus the plug-in variance and slope estimates that
/// standardize the test statistics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MEstimates {
    pub beta_tilde: f64,
    pub theta_tilde: f64,
    /// `sum psi^2(x_i - beta_tilde c_i) / n`, used by the UT.
    pub s1_sq: f64,
    /// `sum psi^2(x_i) / n`, used by the RT.
    pub s2_sq: f64,
    /// `sum psi^2(x_i - theta_tilde) / n`, used by the PT.
    pub s3_sq: f64,
    /// `sum psi'(x_i - theta_tilde) / n`.
    pub gamma_hat_theta: f64,
    /// `sum psi'(x_i - beta_tilde c_i) / n`.
    pub gamma_hat_beta: f64,
}

impl MEstimates {
    /// Estimate of the score standard deviation from the RT residuals.
    pub fn sigma0_hat(&self) -> f64 {
        self.s2_sq.sqrt()
    }
}

pub fn estimate_all(f: &ScoreFunction, s: &Sample) -> Result<MEstimates> {
    let beta = beta_tilde(f, s)?;
    let theta = theta_tilde(f, s)?;
    let n = s.n() as f64;
    let (mut s1, mut s2, mut s3, mut g_theta, mut g_beta) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for (x, c) in s.pairs() {
        let r_beta = x - beta * c;
        let r_theta = x - theta;
        s1 += f.psi(r_beta).powi(2);
        s2 += f.psi(x).powi(2);
        s3 += f.psi(r_theta).powi(2);
        g_theta += f.psi_prime(r_theta);
        g_beta += f.psi_prime(r_beta);
    }
    Ok(MEstimates {
        beta_tilde: beta,
        theta_tilde: theta,
        s1_sq: s1 / n,
        s2_sq: s2 / n,
        s3_sq: s3 / n,
        gamma_hat_theta: g_theta / n,
        gamma_hat_beta: g_beta / n,
    })
}
