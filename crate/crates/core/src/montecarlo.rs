//! Finite-sample simulation of the UT, RT and PTT.
//!
//! Replication `r` draws from its own ChaCha stream `(seed, r)`, so results
//! do not depend on how replications are scheduled across threads. Records
//! are reduced sequentially in replication order.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal, StudentT};
use rayon::prelude::*;

use crate::design::Design;
use crate::error::{Error, Result};
use crate::gauss::std_normal_pdf;
use crate::mstat::Sample;
use crate::power::{power_ptt, power_rt, power_ut, PowerParams};
use crate::quadrature::integrate_pieces;
use crate::score::ScoreFunction;
use crate::testing::{run_ptt, TestConfig};

/// Error distributions, all symmetric about zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ErrorDist {
    StandardNormal,
    Laplace {
        scale: f64,
    },
    StudentT {
        df: f64,
    },
    /// `N(0, 1)` with probability `1 - eps`, `N(0, scale^2)` with probability `eps`.
    ContaminatedNormal {
        eps: f64,
        scale: f64,
    },
}

impl ErrorDist {
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            ErrorDist::StandardNormal => true,
            ErrorDist::Laplace { scale } => scale > 0.0 && scale.is_finite(),
            ErrorDist::StudentT { df } => df > 0.0 && df.is_finite(),
            ErrorDist::ContaminatedNormal { eps, scale } => {
                (0.0..=1.0).contains(&eps) && scale > 0.0 && scale.is_finite()
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidConfig(format!(
                "invalid error distribution {self:?}"
            )))
        }
    }

    pub fn density(&self, x: f64) -> f64 {
        match *self {
            ErrorDist::StandardNormal => std_normal_pdf(x),
            ErrorDist::Laplace { scale } => (-x.abs() / scale).exp() / (2.0 * scale),
            ErrorDist::StudentT { df } => {
                let log_norm = libm::lgamma(0.5 * (df + 1.0))
                    - libm::lgamma(0.5 * df)
                    - 0.5 * (df * std::f64::consts::PI).ln();
                (log_norm - 0.5 * (df + 1.0) * (x * x / df).ln_1p()).exp()
            }
            ErrorDist::ContaminatedNormal { eps, scale } => {
                (1.0 - eps) * std_normal_pdf(x) + eps * std_normal_pdf(x / scale) / scale
            }
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            ErrorDist::StandardNormal => rng.sample(StandardNormal),
            ErrorDist::Laplace { scale } => {
                let u: f64 = rng.random::<f64>() - 0.5;
                -scale * u.signum() * (1.0 - 2.0 * u.abs()).ln()
            }
            ErrorDist::StudentT { df } => StudentT::new(df).expect("validated df").sample(rng),
            ErrorDist::ContaminatedNormal { eps, scale } => {
                let z: f64 = rng.sample(StandardNormal);
                if rng.random::<f64>() < eps {
                    scale * z
                } else {
                    z
                }
            }
        }
    }
}

impl std::fmt::Display for ErrorDist {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ErrorDist::StandardNormal => f.write_str("normal"),
            ErrorDist::Laplace { scale } => write!(f, "laplace:{scale}"),
            ErrorDist::StudentT { df } => write!(f, "t:{df}"),
            ErrorDist::ContaminatedNormal { eps, scale } => write!(f, "contaminated:{eps},{scale}"),
        }
    }
}

/// Regressor layouts. The two-valued presets alternate their values, so each
/// value takes half of the observations.
#[derive(Debug, Clone, PartialEq)]
pub enum Regressor {
    /// 0 and 1: positive mean.
    ZerosOnes,
    /// -1 and 0: negative mean.
    Neg1Zeros,
    /// -1 and 1: zero mean.
    Neg1Pos1,
    Custom(Vec<f64>),
}

impl Regressor {
    pub fn values(&self, n: usize) -> Result<Vec<f64>> {
        let two = |a: f64, b: f64| (0..n).map(|i| if i % 2 == 0 { a } else { b }).collect();
        Ok(match self {
            Regressor::ZerosOnes => two(0.0, 1.0),
            Regressor::Neg1Zeros => two(-1.0, 0.0),
            Regressor::Neg1Pos1 => two(-1.0, 1.0),
            Regressor::Custom(c) => {
                if c.len() != n {
                    return Err(Error::InvalidConfig(format!(
                        "custom regressor has {} values but n = {n}",
                        c.len()
                    )));
                }
                c.clone()
            }
        })
    }

    pub fn design(&self, n: usize) -> Result<Design> {
        Design::new(self.values(n)?)
    }
}

impl std::fmt::Display for Regressor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Regressor::ZerosOnes => f.write_str("zeros_ones"),
            Regressor::Neg1Zeros => f.write_str("neg1_zeros"),
            Regressor::Neg1Pos1 => f.write_str("neg1_pos1"),
            Regressor::Custom(c) => write!(f, "custom({})", c.len()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub n: usize,
    pub reps: usize,
    pub seed: u64,
    pub theta: f64,
    pub beta: f64,
    pub error_dist: ErrorDist,
    pub regressor: Regressor,
    pub test_config: TestConfig,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            n: 1000,
            reps: 1000,
            seed: 0,
            theta: 0.0,
            beta: 0.0,
            error_dist: ErrorDist::StandardNormal,
            regressor: Regressor::ZerosOnes,
            test_config: TestConfig::default(),
        }
    }
}

impl SimConfig {
    /// Local alternative `(theta, beta) = (lambda1, lambda2) / sqrt(n)`.
    pub fn at_local_alternative(mut self, lambda1: f64, lambda2: f64) -> Self {
        let root_n = (self.n as f64).sqrt();
        self.theta = lambda1 / root_n;
        self.beta = lambda2 / root_n;
        self
    }

    pub fn validate(&self) -> Result<Design> {
        if self.n < 10 {
            return Err(Error::InvalidConfig(format!(
                "n must be at least 10, got {}",
                self.n
            )));
        }
        if self.reps == 0 {
            return Err(Error::InvalidConfig("reps must be positive".into()));
        }
        if !self.theta.is_finite() || !self.beta.is_finite() {
            return Err(Error::InvalidConfig("theta and beta must be finite".into()));
        }
        self.error_dist.validate()?;
        self.test_config.validate()?;
        self.regressor.design(self.n)
    }
}

/// Empirical rejection rate with its binomial standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rate {
    pub rate: f64,
    pub stderr: f64,
}

impl Rate {
    fn from_count(hits: usize, total: usize) -> Rate {
        if total == 0 {
            return Rate {
                rate: f64::NAN,
                stderr: f64::NAN,
            };
        }
        let p = hits as f64 / total as f64;
        Rate {
            rate: p,
            stderr: (p * (1.0 - p) / total as f64).sqrt(),
        }
    }
}

/// Sample mean and standard deviation of a standardized statistic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    pub mean: f64,
    pub sd: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimResult {
    pub reps_ok: usize,
    /// Replications whose estimators failed; excluded from every summary.
    pub failed_reps: usize,
    pub reject_ut: Rate,
    pub reject_rt: Rate,
    pub reject_ptt: Rate,
    pub reject_pt: Rate,
    pub z_ut: Moments,
    pub z_rt: Moments,
    pub z_pt: Moments,
    pub corr_rt_pt: f64,
    pub corr_ut_pt: f64,
}

impl SimResult {
    /// Flat `(name, value)` record in a fixed column order.
    pub fn fields(&self) -> Vec<(&'static str, f64)> {
        vec![
            ("reps_ok", self.reps_ok as f64),
            ("failed_reps", self.failed_reps as f64),
            ("reject_rate_ut", self.reject_ut.rate),
            ("stderr_ut", self.reject_ut.stderr),
            ("reject_rate_rt", self.reject_rt.rate),
            ("stderr_rt", self.reject_rt.stderr),
            ("reject_rate_ptt", self.reject_ptt.rate),
            ("stderr_ptt", self.reject_ptt.stderr),
            ("pt_reject_rate", self.reject_pt.rate),
            ("stderr_pt", self.reject_pt.stderr),
            ("mean_z_ut", self.z_ut.mean),
            ("sd_z_ut", self.z_ut.sd),
            ("mean_z_rt", self.z_rt.mean),
            ("sd_z_rt", self.z_rt.sd),
            ("mean_z_pt", self.z_pt.mean),
            ("sd_z_pt", self.z_pt.sd),
            ("corr_rt_pt", self.corr_rt_pt),
            ("corr_ut_pt", self.corr_ut_pt),
        ]
    }
}

#[derive(Clone, Copy)]
struct Record {
    z: [f64; 3],
    reject: [bool; 4],
}

fn replicate(cfg: &SimConfig, design: &Design, rep: usize) -> Result<Record> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(rep as u64);
    let x = design
        .values()
        .iter()
        .map(|c| cfg.theta + cfg.beta * c + cfg.error_dist.sample(&mut rng))
        .collect();
    let sample = Sample::new(x, design.clone())?;
    let o = run_ptt(&cfg.test_config, &sample)?;
    Ok(Record {
        z: [o.ut.standardized, o.rt.standardized, o.pt.standardized],
        reject: [o.ut_reject(), o.rt_reject(), o.ptt_reject, o.pt_rejected],
    })
}

fn moments(values: &[f64]) -> Moments {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    Moments {
        mean,
        sd: var.sqrt(),
    }
}

fn correlation(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len() as f64;
    let ma = a.iter().sum::<f64>() / n;
    let mb = b.iter().sum::<f64>() / n;
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        sab += (x - ma) * (y - mb);
        saa += (x - ma).powi(2);
        sbb += (y - mb).powi(2);
    }
    sab / (saa * sbb).sqrt()
}

/// Runs `cfg.reps` independent replications of the three tests.
pub fn simulate(cfg: &SimConfig) -> Result<SimResult> {
    let design = cfg.validate()?;
    let records: Vec<Option<Record>> = (0..cfg.reps)
        .into_par_iter()
        .map(|rep| replicate(cfg, &design, rep).ok())
        .collect();

    let ok: Vec<Record> = records.iter().flatten().copied().collect();
    let failed_reps = cfg.reps - ok.len();
    let column = |j: usize| ok.iter().map(|r| r.z[j]).collect::<Vec<_>>();
    let count = |j: usize| ok.iter().filter(|r| r.reject[j]).count();
    let (z_ut, z_rt, z_pt) = (column(0), column(1), column(2));
    let total = ok.len();
    Ok(SimResult {
        reps_ok: total,
        failed_reps,
        reject_ut: Rate::from_count(count(0), total),
        reject_rt: Rate::from_count(count(1), total),
        reject_ptt: Rate::from_count(count(2), total),
        reject_pt: Rate::from_count(count(3), total),
        z_ut: moments(&z_ut),
        z_rt: moments(&z_rt),
        z_pt: moments(&z_pt),
        corr_rt_pt: correlation(&z_rt, &z_pt),
        corr_ut_pt: correlation(&z_ut, &z_pt),
    })
}

/// Population score variance `sigma0^2 = int psi^2 dF` and slope
/// `gamma = int psi' dF`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PopulationMoments {
    pub sigma0_sq: f64,
    pub gamma: f64,
}

impl PopulationMoments {
    pub fn sigma0(&self) -> f64 {
        self.sigma0_sq.sqrt()
    }
}

const MOMENT_TOL: f64 = 1e-10;

pub fn population_moments(score: &ScoreFunction, dist: &ErrorDist) -> Result<PopulationMoments> {
    dist.validate()?;
    let density = |x: f64| dist.density(x);
    let inf = f64::INFINITY;
    let (sigma0_sq, gamma) = match *score {
        ScoreFunction::Huber { k } => {
            let pieces = [-inf, -k, k, inf];
            let s = integrate_pieces(
                |x| score.psi(x).powi(2) * density(x),
                &pieces,
                MOMENT_TOL,
                0.0,
            );
            let g = integrate_pieces(density, &[-k, 0.0, k], MOMENT_TOL, 0.0);
            if !(s.converged && g.converged) {
                return Err(Error::InvalidConfig(
                    "score moment quadrature did not converge".into(),
                ));
            }
            (s.value, g.value)
        }
        ScoreFunction::Identity => {
            if let ErrorDist::StudentT { df } = *dist {
                if df <= 2.0 {
                    return Err(Error::InvalidConfig(format!(
                        "identity score needs finite error variance; t with {df} df has none"
                    )));
                }
            }
            let s = integrate_pieces(|x| x * x * density(x), &[-inf, 0.0, inf], MOMENT_TOL, 0.0);
            if !s.converged {
                return Err(Error::InvalidConfig(
                    "error variance quadrature did not converge".into(),
                ));
            }
            (s.value, 1.0)
        }
    };
    Ok(PopulationMoments { sigma0_sq, gamma })
}

/// Empirical rejection rates next to the asymptotic power at the same local
/// alternative.
#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub lambda1: f64,
    pub lambda2: f64,
    pub params: PowerParams,
    pub sim: SimResult,
    pub analytic_ut: f64,
    pub analytic_rt: f64,
    pub analytic_ptt: f64,
}

impl Comparison {
    /// `(test, empirical, analytic, stderr)` rows.
    pub fn rows(&self) -> [(&'static str, f64, f64, f64); 3] {
        [
            (
                "ut",
                self.sim.reject_ut.rate,
                self.analytic_ut,
                self.sim.reject_ut.stderr,
            ),
            (
                "rt",
                self.sim.reject_rt.rate,
                self.analytic_rt,
                self.sim.reject_rt.stderr,
            ),
            (
                "ptt",
                self.sim.reject_ptt.rate,
                self.analytic_ptt,
                self.sim.reject_ptt.stderr,
            ),
        ]
    }
}

pub fn empirical_vs_asymptotic(cfg: &SimConfig, lambda1: f64, lambda2: f64) -> Result<Comparison> {
    let cfg = cfg.clone().at_local_alternative(lambda1, lambda2);
    let design = cfg.validate()?;
    let pop = population_moments(&cfg.test_config.score, &cfg.error_dist)?;
    let tc = &cfg.test_config;
    let params = PowerParams::from_design(&design, pop.sigma0(), pop.gamma)
        .at(lambda1, lambda2)
        .with_alphas(tc.alpha1, tc.alpha2, tc.alpha3);
    let sim = simulate(&cfg)?;
    Ok(Comparison {
        lambda1,
        lambda2,
        analytic_ut: power_ut(&params)?,
        analytic_rt: power_rt(&params)?,
        analytic_ptt: power_ptt(&params)?,
        params,
        sim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::std_normal_cdf;

    const HUBER: ScoreFunction = ScoreFunction::Huber { k: 1.28 };

    fn huber_normal_closed_form(k: f64) -> (f64, f64) {
        let phi = std_normal_cdf(k);
        let s = 2.0 * (phi - 0.5 - k * std_normal_pdf(k)) + 2.0 * k * k * (1.0 - phi);
        (s, 2.0 * phi - 1.0)
    }

    #[test]
    fn normal_huber_moments_match_closed_form() {
        for k in [0.5, 1.28, 2.0] {
            let m = population_moments(
                &ScoreFunction::huber(k).unwrap(),
                &ErrorDist::StandardNormal,
            )
            .unwrap();
            let (s, g) = huber_normal_closed_form(k);
            assert!((m.sigma0_sq - s).abs() < 1e-10, "k={k}");
            assert!((m.gamma - g).abs() < 1e-10);
        }
        let m = population_moments(&HUBER, &ErrorDist::StandardNormal).unwrap();
        assert!((m.sigma0_sq - 0.6778).abs() < 1e-4);
        assert!((m.gamma - 0.7995).abs() < 1e-4);
    }

    #[test]
    fn identity_moments_are_variances() {
        let id = ScoreFunction::Identity;
        let m = population_moments(&id, &ErrorDist::Laplace { scale: 2.0 }).unwrap();
        assert!((m.sigma0_sq - 8.0).abs() < 1e-8);
        let m = population_moments(&id, &ErrorDist::StudentT { df: 5.0 }).unwrap();
        assert!((m.sigma0_sq - 5.0 / 3.0).abs() < 1e-8);
        let m = population_moments(
            &id,
            &ErrorDist::ContaminatedNormal {
                eps: 0.1,
                scale: 3.0,
            },
        )
        .unwrap();
        assert!((m.sigma0_sq - 1.8).abs() < 1e-9);
        assert!(population_moments(&id, &ErrorDist::StudentT { df: 2.0 }).is_err());
    }

    #[test]
    fn huber_gamma_is_central_mass() {
        // Laplace(1): P(|e| <= k) = 1 - exp(-k)
        let m = population_moments(&HUBER, &ErrorDist::Laplace { scale: 1.0 }).unwrap();
        assert!((m.gamma - (1.0 - (-1.28f64).exp())).abs() < 1e-10);
    }

    #[test]
    fn densities_integrate_to_one() {
        let dists = [
            ErrorDist::StandardNormal,
            ErrorDist::Laplace { scale: 0.7 },
            ErrorDist::StudentT { df: 3.0 },
            ErrorDist::ContaminatedNormal {
                eps: 0.2,
                scale: 5.0,
            },
        ];
        for d in dists {
            let inf = f64::INFINITY;
            let r = integrate_pieces(|x| d.density(x), &[-inf, 0.0, inf], 1e-11, 0.0);
            assert!((r.value - 1.0).abs() < 1e-9, "{d}");
        }
    }

    #[test]
    fn sampler_moments() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let n = 200_000;
        for (d, var) in [
            (ErrorDist::Laplace { scale: 1.5 }, 4.5),
            (
                ErrorDist::ContaminatedNormal {
                    eps: 0.1,
                    scale: 3.0,
                },
                1.8,
            ),
            (ErrorDist::StudentT { df: 6.0 }, 1.5),
        ] {
            let xs: Vec<f64> = (0..n).map(|_| d.sample(&mut rng)).collect();
            let m = moments(&xs);
            assert!(m.mean.abs() < 0.02, "{d}");
            assert!(
                (m.sd * m.sd / var - 1.0).abs() < 0.05,
                "{d}: {}",
                m.sd * m.sd
            );
        }
    }

    #[test]
    fn regressor_presets() {
        assert_eq!(
            Regressor::ZerosOnes.values(4).unwrap(),
            vec![0.0, 1.0, 0.0, 1.0]
        );
        assert_eq!(Regressor::Neg1Zeros.design(1000).unwrap().cbar_n, -0.5);
        assert_eq!(Regressor::Neg1Pos1.design(1000).unwrap().cbar_n, 0.0);
        assert!(Regressor::Custom(vec![1.0; 3]).values(4).is_err());
    }

    #[test]
    fn config_validation() {
        let mut cfg = SimConfig {
            n: 5,
            ..SimConfig::default()
        };
        assert!(cfg.validate().is_err());
        cfg.n = 20;
        cfg.reps = 0;
        assert!(cfg.validate().is_err());
        cfg.reps = 1;
        cfg.regressor = Regressor::Custom(vec![2.0; 20]);
        assert!(matches!(
            cfg.validate(),
            Err(Error::DegenerateDesign { .. })
        ));
        cfg.regressor = Regressor::ZerosOnes;
        cfg.error_dist = ErrorDist::Laplace { scale: -1.0 };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn reproducible() {
        let cfg = SimConfig {
            n: 100,
            reps: 300,
            seed: 42,
            theta: 0.1,
            ..SimConfig::default()
        };
        assert_eq!(simulate(&cfg).unwrap(), simulate(&cfg).unwrap());
        let other = simulate(&SimConfig {
            seed: 43,
            ..cfg.clone()
        })
        .unwrap();
        assert_ne!(simulate(&cfg).unwrap(), other);
    }

    #[test]
    fn stderr_formula() {
        let r = simulate(&SimConfig {
            n: 50,
            reps: 400,
            seed: 9,
            ..SimConfig::default()
        })
        .unwrap();
        for rate in [r.reject_ut, r.reject_rt, r.reject_ptt, r.reject_pt] {
            assert!((0.0..=1.0).contains(&rate.rate));
            let want = (rate.rate * (1.0 - rate.rate) / r.reps_ok as f64).sqrt();
            assert_eq!(rate.stderr, want);
        }
        assert_eq!(r.failed_reps, 0);
        assert!((-1.0..=1.0).contains(&r.corr_rt_pt) && (-1.0..=1.0).contains(&r.corr_ut_pt));
    }

    #[test]
    fn split_halves_agree_with_pooled_run() {
        let base = SimConfig {
            n: 100,
            reps: 4000,
            seed: 1,
            ..SimConfig::default()
        }
        .at_local_alternative(1.0, 1.0);
        let whole = simulate(&base).unwrap();
        let a = simulate(&SimConfig {
            reps: 2000,
            seed: 2,
            ..base.clone()
        })
        .unwrap();
        let b = simulate(&SimConfig {
            reps: 2000,
            seed: 3,
            ..base.clone()
        })
        .unwrap();
        for (w, x, y) in [
            (whole.reject_ut, a.reject_ut, b.reject_ut),
            (whole.reject_rt, a.reject_rt, b.reject_rt),
            (whole.reject_ptt, a.reject_ptt, b.reject_ptt),
        ] {
            let pooled = 0.5 * (x.rate + y.rate);
            let se = (2.0 * w.stderr * w.stderr).sqrt();
            assert!((pooled - w.rate).abs() < 3.0 * se, "{pooled} vs {}", w.rate);
        }
    }

    #[test]
    fn local_alternative_scaling() {
        let cfg = SimConfig {
            n: 400,
            ..SimConfig::default()
        }
        .at_local_alternative(2.0, -4.0);
        assert_eq!(cfg.theta, 0.1);
        assert_eq!(cfg.beta, -0.2);
    }

    #[test]
    fn comparison_at_null_matches_sizes() {
        let cfg = SimConfig {
            n: 400,
            reps: 4000,
            seed: 17,
            ..SimConfig::default()
        };
        let cmp = empirical_vs_asymptotic(&cfg, 0.0, 0.0).unwrap();
        assert!((cmp.analytic_ut - 0.05).abs() < 1e-12);
        assert!((cmp.analytic_rt - 0.05).abs() < 1e-12);
        for (name, emp, ana, se) in cmp.rows() {
            assert!(
                (emp - ana).abs() < 3.5 * se.max(1e-3),
                "{name}: {emp} vs {ana}"
            );
        }
    }

    #[test]
    fn null_calibration_at_n_1000() {
        let reps = 4000;
        let r = simulate(&SimConfig {
            reps,
            seed: 5,
            ..SimConfig::default()
        })
        .unwrap();
        for m in [r.z_ut, r.z_rt, r.z_pt] {
            assert!(m.mean.abs() < 4.0 / (reps as f64).sqrt() * m.sd, "{m:?}");
            assert!((m.sd - 1.0).abs() < 0.05, "{m:?}");
        }
    }

    #[test]
    fn ptt_power_at_intercept_alternative() {
        let cfg = SimConfig {
            reps: 3000,
            seed: 11,
            ..SimConfig::default()
        };
        let cmp = empirical_vs_asymptotic(&cfg, 2.0, 0.0).unwrap();
        let (_, emp, ana, se) = cmp.rows()[2];
        assert!((emp - ana).abs() < 0.02f64.max(3.0 * se), "{emp} vs {ana}");
    }

    #[test]
    fn large_slope_drives_rt_up_and_ptt_back_to_size() {
        let cfg = SimConfig {
            reps: 3000,
            seed: 12,
            ..SimConfig::default()
        };
        let cmp = empirical_vs_asymptotic(&cfg, 0.0, 10.0).unwrap();
        assert!(cmp.sim.reject_rt.rate > 0.99, "{:?}", cmp.sim.reject_rt);
        assert!(
            (cmp.sim.reject_ptt.rate - 0.05).abs() < 0.02,
            "{:?}",
            cmp.sim.reject_ptt
        );
    }
}
