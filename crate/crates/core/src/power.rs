//! Asymptotic power of the UT, RT and PTT under local alternatives
//! `(theta, beta) = (lambda1, lambda2) / sqrt(n)`.
//!
//! All three depend on the score only through `gamma / sigma0`.

use crate::design::Design;
use crate::error::{Error, Result};
use crate::gauss::{orthant, std_normal_cdf, std_normal_sf, upper_critical, OrthantQuery};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerParams {
    /// Local intercept.
    pub lambda1: f64,
    /// Local slope.
    pub lambda2: f64,
    /// Limit mean of the regressor.
    pub cbar: f64,
    /// Square root of the limit of `C*_n^2 / n`.
    pub cstar: f64,
    pub sigma0: f64,
    pub gamma: f64,
    /// Nominal size of the UT.
    pub alpha1: f64,
    /// Nominal size of the RT.
    pub alpha2: f64,
    /// Nominal size of the pre-test.
    pub alpha3: f64,
}

impl PowerParams {
    /// Parameters at the null `lambda1 = lambda2 = 0` with all sizes 0.05.
    pub fn new(cbar: f64, cstar: f64, sigma0: f64, gamma: f64) -> Self {
        PowerParams {
            lambda1: 0.0,
            lambda2: 0.0,
            cbar,
            cstar,
            sigma0,
            gamma,
            alpha1: 0.05,
            alpha2: 0.05,
            alpha3: 0.05,
        }
    }

    /// Plugs in the finite-n design constants.
    pub fn from_design(design: &Design, sigma0: f64, gamma: f64) -> Self {
        Self::new(design.cbar_limit(), design.cstar_limit(), sigma0, gamma)
    }

    pub fn at(mut self, lambda1: f64, lambda2: f64) -> Self {
        self.lambda1 = lambda1;
        self.lambda2 = lambda2;
        self
    }

    pub fn with_alphas(mut self, alpha1: f64, alpha2: f64, alpha3: f64) -> Self {
        self.alpha1 = alpha1;
        self.alpha2 = alpha2;
        self.alpha3 = alpha3;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [
            self.lambda1,
            self.lambda2,
            self.cbar,
            self.cstar,
            self.sigma0,
            self.gamma,
        ];
        if finite.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "non-finite value in {self:?}"
            )));
        }
        if self.cstar == 0.0 {
            return Err(Error::DegenerateDesign { cstar2: 0.0 });
        }
        if self.cstar < 0.0 {
            return Err(Error::InvalidParams(format!(
                "cstar must be positive, got {}",
                self.cstar
            )));
        }
        if !(self.sigma0 > 0.0) {
            return Err(Error::InvalidParams(format!(
                "sigma0 must be positive, got {}",
                self.sigma0
            )));
        }
        if !(self.gamma > 0.0) {
            return Err(Error::InvalidParams(format!(
                "gamma must be positive, got {}",
                self.gamma
            )));
        }
        for (name, a) in [
            ("alpha1", self.alpha1),
            ("alpha2", self.alpha2),
            ("alpha3", self.alpha3),
        ] {
            if !(a > 0.0 && a < 1.0) {
                return Err(Error::InvalidParams(format!(
                    "{name} must be in (0, 1), got {a}"
                )));
            }
        }
        Ok(())
    }

    /// `sqrt(C*^2 / (C*^2 + cbar^2))`, the UT efficiency factor.
    fn ut_factor(&self) -> f64 {
        let c2 = self.cstar * self.cstar;
        (c2 / (c2 + self.cbar * self.cbar)).sqrt()
    }

    /// Correlation of the limiting UT and PT statistics.
    pub fn rho_ut_pt(&self) -> f64 {
        -self.cbar / (self.cstar * self.cstar + self.cbar * self.cbar).sqrt()
    }
}

/// Standardized critical points shifted by the local drift of each statistic.
struct Shifted {
    ut: f64,
    rt: f64,
    pt: f64,
}

fn shifted(p: &PowerParams) -> Result<Shifted> {
    p.validate()?;
    let ratio = p.gamma / p.sigma0;
    Ok(Shifted {
        ut: upper_critical(p.alpha1)? - ratio * p.lambda1 * p.ut_factor(),
        rt: upper_critical(p.alpha2)? - ratio * (p.lambda1 + p.lambda2 * p.cbar),
        pt: upper_critical(p.alpha3)? - ratio * p.lambda2 * p.cstar,
    })
}

pub fn power_ut(p: &PowerParams) -> Result<f64> {
    Ok(std_normal_sf(shifted(p)?.ut))
}

pub fn power_rt(p: &PowerParams) -> Result<f64> {
    Ok(std_normal_sf(shifted(p)?.rt))
}

/// The two summands of the PTT power: `(RT branch, UT branch)`, i.e. the
/// limiting probabilities of "pre-test accepts and RT rejects" and
/// "pre-test rejects and UT rejects".
pub fn power_ptt_components(p: &PowerParams) -> Result<(f64, f64)> {
    let s = shifted(p)?;
    // RT and PT are asymptotically independent.
    let acceptance_branch = std_normal_cdf(s.pt) * std_normal_sf(s.rt);
    let rejection_branch = orthant(OrthantQuery::new(s.pt, s.ut, p.rho_ut_pt())?);
    Ok((acceptance_branch, rejection_branch))
}

pub fn power_ptt(p: &PowerParams) -> Result<f64> {
    let (a, r) = power_ptt_components(p)?;
    Ok(a + r)
}

/// Which of the analytic orderings apply at a parameter point, and whether
/// they hold numerically.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderingReport {
    pub pi_ut: f64,
    pub pi_rt: f64,
    pub pi_ptt: f64,
    /// `cbar > 0`, `lambda2 > 0` and `lambda1 + lambda2 cbar > lambda1 sqrt(C*^2/(C*^2+cbar^2))`:
    /// RT is predicted to beat both PTT and UT.
    pub rt_dominance_predicted: bool,
    /// `cbar < 0`, `lambda2 > 0` and the reverse inequality: RT is predicted
    /// to lose to both PTT and UT.
    pub rt_inferiority_predicted: bool,
    /// `cbar = 0`: all three powers coincide.
    pub equality_predicted: bool,
    pub rt_gt_ptt: bool,
    pub rt_gt_ut: bool,
    pub rt_lt_ptt: bool,
    pub rt_lt_ut: bool,
    pub all_equal: bool,
}

impl OrderingReport {
    /// True when every predicted ordering is observed.
    pub fn predictions_hold(&self) -> bool {
        (!self.rt_dominance_predicted || (self.rt_gt_ptt && self.rt_gt_ut))
            && (!self.rt_inferiority_predicted || (self.rt_lt_ptt && self.rt_lt_ut))
            && (!self.equality_predicted || self.all_equal)
    }
}

/// Tolerance used for the equal-power check when `cbar = 0`.
pub const EQUAL_POWER_TOL: f64 = 1e-10;

pub fn compare_region(p: &PowerParams) -> Result<OrderingReport> {
    if p.alpha1 != p.alpha2 {
        return Err(Error::Precondition(format!(
            "ordering results need alpha1 == alpha2, got {} and {}",
            p.alpha1, p.alpha2
        )));
    }
    let pi_ut = power_ut(p)?;
    let pi_rt = power_rt(p)?;
    let pi_ptt = power_ptt(p)?;
    let rt_drift = p.lambda1 + p.lambda2 * p.cbar;
    let ut_drift = p.lambda1 * p.ut_factor();
    Ok(OrderingReport {
        pi_ut,
        pi_rt,
        pi_ptt,
        rt_dominance_predicted: p.cbar > 0.0 && p.lambda2 > 0.0 && rt_drift > ut_drift,
        rt_inferiority_predicted: p.cbar < 0.0 && p.lambda2 > 0.0 && rt_drift < ut_drift,
        equality_predicted: p.cbar == 0.0,
        rt_gt_ptt: pi_rt > pi_ptt,
        rt_gt_ut: pi_rt > pi_ut,
        rt_lt_ptt: pi_rt < pi_ptt,
        rt_lt_ut: pi_rt < pi_ut,
        all_equal: (pi_ut - pi_rt).abs() < EQUAL_POWER_TOL
            && (pi_ut - pi_ptt).abs() < EQUAL_POWER_TOL,
    })
}
