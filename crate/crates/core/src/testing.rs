//! The UT, RT and PT statistics on concrete data and the two-stage PTT
//! decision.
//!
//! Critical values are the asymptotic upper normal quantiles; every test is
//! one-sided (upper tail) and rejects on strict exceedance.

use crate::error::{Error, Result};
use crate::gauss::upper_critical;
use crate::mstat::{estimate_all, m1, m2, MEstimates, Sample};
use crate::score::ScoreFunction;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestConfig {
    pub score: ScoreFunction,
    /// Nominal size of the UT.
    pub alpha1: f64,
    /// Nominal size of the RT.
    pub alpha2: f64,
    /// Nominal size of the pre-test on the slope.
    pub alpha3: f64,
}

impl Default for TestConfig {
    fn default() -> Self {
        TestConfig {
            score: ScoreFunction::default(),
            alpha1: 0.05,
            alpha2: 0.05,
            alpha3: 0.05,
        }
    }
}

impl TestConfig {
    pub fn new(score: ScoreFunction, alpha1: f64, alpha2: f64, alpha3: f64) -> Result<Self> {
        let cfg = TestConfig {
            score,
            alpha1,
            alpha2,
            alpha3,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
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
        if let ScoreFunction::Huber { k } = self.score {
            ScoreFunction::huber(k)?;
        }
        Ok(())
    }

    /// Critical values `(tau_alpha1, tau_alpha2, tau_alpha3)`.
    pub fn critical_values(&self) -> Result<(f64, f64, f64)> {
        Ok((
            upper_critical(self.alpha1)?,
            upper_critical(self.alpha2)?,
            upper_critical(self.alpha3)?,
        ))
    }
}

/// A raw M-statistic and its standardized (asymptotically N(0, 1)) form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Statistic {
    pub raw: f64,
    pub standardized: f64,
}

/// Which test the PTT used for its final decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// Pre-test accepted `beta = 0`.
    UsedRt,
    /// Pre-test rejected `beta = 0`.
    UsedUt,
}

impl std::fmt::Display for Branch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Branch::UsedRt => "used_RT",
            Branch::UsedUt => "used_UT",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestOutcome {
    pub ut: Statistic,
    pub rt: Statistic,
    pub pt: Statistic,
    pub crit_ut: f64,
    pub crit_rt: f64,
    pub crit_pt: f64,
    pub pt_rejected: bool,
    pub branch: Branch,
    pub ptt_reject: bool,
    pub estimates: MEstimates,
}

impl TestOutcome {
    /// Stand-alone UT decision.
    pub fn ut_reject(&self) -> bool {
        self.ut.standardized > self.crit_ut
    }

    /// Stand-alone RT decision.
    pub fn rt_reject(&self) -> bool {
        self.rt.standardized > self.crit_rt
    }
}

fn standardize(raw: f64, variance: f64, statistic: &'static str) -> Result<Statistic> {
    if !(variance > 0.0) {
        return Err(Error::ZeroVariance { statistic });
    }
    Ok(Statistic {
        raw,
        standardized: raw / variance.sqrt(),
    })
}

fn ut_from(f: &ScoreFunction, s: &Sample, est: &MEstimates) -> Result<Statistic> {
    let raw = m1(f, s, 0.0, est.beta_tilde);
    standardize(raw, s.design().c1_n * est.s1_sq, "UT")
}

fn rt_from(f: &ScoreFunction, s: &Sample, est: &MEstimates) -> Result<Statistic> {
    let raw = m1(f, s, 0.0, 0.0);
    standardize(raw, s.n() as f64 * est.s2_sq, "RT")
}

fn pt_from(f: &ScoreFunction, s: &Sample, est: &MEstimates) -> Result<Statistic> {
    let raw = m2(f, s, est.theta_tilde, 0.0);
    standardize(raw, s.design().c3_n * est.s3_sq, "PT")
}

/// UT statistic `M_n1(0, beta_tilde)`, standardized by `sqrt(C_n^(1) S_n^(1)^2)`.
pub fn stat_ut(f: &ScoreFunction, s: &Sample) -> Result<Statistic> {
    ut_from(f, s, &estimate_all(f, s)?)
}

/// RT statistic `M_n1(0, 0)`, standardized by `sqrt(n S_n^(2)^2)`.
pub fn stat_rt(f: &ScoreFunction, s: &Sample) -> Result<Statistic> {
    let n = s.n() as f64;
    let s2_sq = s.responses().iter().map(|&x| f.psi(x).powi(2)).sum::<f64>() / n;
    standardize(m1(f, s, 0.0, 0.0), n * s2_sq, "RT")
}

/// PT statistic `M_n2(theta_tilde, 0)`, standardized by `sqrt(C_n^(3) S_n^(3)^2)`.
pub fn stat_pt(f: &ScoreFunction, s: &Sample) -> Result<Statistic> {
    pt_from(f, s, &estimate_all(f, s)?)
}

/// Runs all three statistics and the pre-test test.
pub fn run_ptt(cfg: &TestConfig, s: &Sample) -> Result<TestOutcome> {
    cfg.validate()?;
    let f = &cfg.score;
    let est = estimate_all(f, s)?;
    let ut = ut_from(f, s, &est)?;
    let rt = rt_from(f, s, &est)?;
    let pt = pt_from(f, s, &est)?;
    let (crit_ut, crit_rt, crit_pt) = cfg.critical_values()?;
    let pt_rejected = pt.standardized > crit_pt;
    let (branch, ptt_reject) = if pt_rejected {
        (Branch::UsedUt, ut.standardized > crit_ut)
    } else {
        (Branch::UsedRt, rt.standardized > crit_rt)
    };
    Ok(TestOutcome {
        ut,
        rt,
        pt,
        crit_ut,
        crit_rt,
        crit_pt,
        pt_rejected,
        branch,
        ptt_reject,
        estimates: est,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::Design;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use rand_distr::StandardNormal;

    const HUBER: ScoreFunction = ScoreFunction::Huber { k: 1.28 };

    fn zeros_ones(n: usize) -> Vec<f64> {
        (0..n).map(|i| (i % 2) as f64).collect()
    }

    fn noisy(seed: u64, theta: f64, beta: f64, c: &[f64]) -> Sample {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = c
            .iter()
            .map(|c| theta + beta * c + rng.sample::<f64, _>(StandardNormal))
            .collect();
        Sample::from_columns(x, c.to_vec()).unwrap()
    }

    #[test]
    fn exact_slope_fit_has_zero_ut_raw() {
        let c: Vec<f64> = (0..40).map(|i| (i % 4) as f64).collect();
        let x: Vec<f64> = c.iter().map(|c| 2.5 * c).collect();
        let s = Sample::from_columns(x, c).unwrap();
        let est = estimate_all(&HUBER, &s).unwrap();
        let raw = m1(&HUBER, &s, 0.0, est.beta_tilde);
        assert!(raw.abs() < 40.0 * 1e-9);
        match stat_ut(&HUBER, &s) {
            Ok(st) => assert!(st.raw.abs() < 40.0 * 1e-9),
            Err(e) => assert!(matches!(e, Error::ZeroVariance { .. })),
        }
    }

    #[test]
    fn constant_response_has_zero_pt_raw() {
        let c: Vec<f64> = (0..30).map(|i| i as f64).collect();
        let s = Sample::from_columns(vec![4.0; 30], c).unwrap();
        let est = estimate_all(&HUBER, &s).unwrap();
        assert!(m2(&HUBER, &s, est.theta_tilde, 0.0).abs() < 30.0 * 1e-9 * 30.0);
        match stat_pt(&HUBER, &s) {
            Ok(st) => assert!(st.raw.abs() < 1e-6),
            Err(e) => assert!(matches!(e, Error::ZeroVariance { .. })),
        }
    }

    #[test]
    fn all_zero_response_rt() {
        let s = Sample::from_columns(vec![0.0; 5], (0..5).map(|i| i as f64).collect()).unwrap();
        assert!(matches!(
            stat_rt(&HUBER, &s),
            Err(Error::ZeroVariance { statistic: "RT" })
        ));
        assert_eq!(m1(&HUBER, &s, 0.0, 0.0), 0.0);
    }

    #[test]
    fn identity_rt_is_a_t_like_ratio() {
        let s = noisy(5, 0.3, 0.0, &zeros_ones(50));
        let x = s.responses();
        let n = x.len() as f64;
        let mean = x.iter().sum::<f64>() / n;
        let ms = x.iter().map(|v| v * v).sum::<f64>() / n;
        let st = stat_rt(&ScoreFunction::Identity, &s).unwrap();
        assert!((st.raw - n * mean).abs() < 1e-10);
        assert!((st.standardized - n.sqrt() * mean / ms.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn identity_pt_centered_cross_product() {
        let c: Vec<f64> = (0..60)
            .map(|i| if i % 2 == 0 { -1.0 } else { 1.0 })
            .collect();
        let s = noisy(9, 0.2, 0.1, &c);
        let x = s.responses();
        let mean = x.iter().sum::<f64>() / x.len() as f64;
        let want: f64 = c.iter().zip(x).map(|(c, x)| c * (x - mean)).sum();
        let st = stat_pt(&ScoreFunction::Identity, &s).unwrap();
        assert!((st.raw - want).abs() < 1e-8);
    }

    #[test]
    fn decisions_at_extreme_pretest_sizes() {
        let c = zeros_ones(200);
        for seed in 0..20 {
            let s = noisy(seed, 0.0, 0.0, &c);
            let hi = run_ptt(&TestConfig::new(HUBER, 0.05, 0.05, 1.0 - 1e-9).unwrap(), &s).unwrap();
            assert_eq!(hi.branch, Branch::UsedUt);
            let lo = run_ptt(&TestConfig::new(HUBER, 0.05, 0.05, 1e-9).unwrap(), &s).unwrap();
            assert_eq!(lo.branch, Branch::UsedRt);
        }
    }

    #[test]
    fn distant_alternative_rejects() {
        let c = zeros_ones(1000);
        let cfg = TestConfig::default();
        let rejected = (0..100)
            .filter(|&seed| {
                run_ptt(&cfg, &noisy(seed, 5.0, 0.0, &c))
                    .unwrap()
                    .ptt_reject
            })
            .count();
        assert!(rejected >= 99);
    }

    #[test]
    fn outcome_is_deterministic() {
        let s = noisy(77, 0.1, 0.05, &zeros_ones(300));
        let cfg = TestConfig::default();
        assert_eq!(run_ptt(&cfg, &s).unwrap(), run_ptt(&cfg, &s).unwrap());
    }

    #[test]
    fn invalid_config() {
        assert!(TestConfig::new(HUBER, 0.0, 0.05, 0.05).is_err());
        assert!(TestConfig::new(HUBER, 0.05, 0.05, 1.0).is_err());
        assert!(TestConfig::new(ScoreFunction::Huber { k: -1.0 }, 0.05, 0.05, 0.05).is_err());
    }

    #[test]
    fn standardized_statistics_are_approximately_standard_normal() {
        let c = zeros_ones(1000);
        let reps = 10_000;
        let mut z = [Vec::new(), Vec::new(), Vec::new()];
        let cfg = TestConfig::default();
        for seed in 0..reps {
            let o = run_ptt(&cfg, &noisy(1000 + seed, 0.0, 0.0, &c)).unwrap();
            z[0].push(o.ut.standardized);
            z[1].push(o.rt.standardized);
            z[2].push(o.pt.standardized);
        }
        for zs in &z {
            let n = zs.len() as f64;
            let mean = zs.iter().sum::<f64>() / n;
            let sd = (zs.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt();
            assert!(mean.abs() < 0.05, "mean {mean}");
            assert!((sd - 1.0).abs() < 0.05, "sd {sd}");
        }
    }

    // Identity score: closed-form least-squares algebra for the UT.
    fn ut_closed_form(x: &[f64], c: &[f64]) -> (f64, f64) {
        let n = x.len() as f64;
        let sxc: f64 = x.iter().zip(c).map(|(x, c)| x * c).sum();
        let scc: f64 = c.iter().map(|c| c * c).sum();
        let b = sxc / scc;
        let raw: f64 = x.iter().zip(c).map(|(x, c)| x - b * c).sum();
        let s1: f64 = x
            .iter()
            .zip(c)
            .map(|(x, c)| (x - b * c).powi(2))
            .sum::<f64>()
            / n;
        let cbar = c.iter().sum::<f64>() / n;
        let c1 = n - n * n * cbar * cbar / scc;
        (raw, raw / (c1 * s1).sqrt())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn identity_ut_matches_least_squares(seed in 0u64..10_000, n in 5usize..200) {
            let c: Vec<f64> = (0..n).map(|i| (i % 3) as f64 + 0.5).collect();
            prop_assume!(Design::new(c.clone()).is_ok());
            let s = noisy(seed, 0.4, -0.2, &c);
            let st = stat_ut(&ScoreFunction::Identity, &s).unwrap();
            let (raw, z) = ut_closed_form(s.responses(), &c);
            prop_assert!((st.raw - raw).abs() < 1e-8 * (1.0 + raw.abs()));
            prop_assert!((st.standardized - z).abs() < 1e-8);
        }

        #[test]
        fn decision_coherence(seed in 0u64..10_000, theta in -0.5f64..0.5, beta in -0.5f64..0.5,
                              a1 in 0.01f64..0.5, a2 in 0.01f64..0.5, a3 in 0.01f64..0.99) {
            let s = noisy(seed, theta, beta, &zeros_ones(60));
            let o = run_ptt(&TestConfig::new(HUBER, a1, a2, a3).unwrap(), &s).unwrap();
            let pt_rej = o.pt.standardized > o.crit_pt;
            let expected = (!pt_rej && o.rt.standardized > o.crit_rt) || (pt_rej && o.ut.standardized > o.crit_ut);
            prop_assert_eq!(o.ptt_reject, expected);
            prop_assert_eq!(o.pt_rejected, pt_rej);
            prop_assert_eq!(o.branch == Branch::UsedUt, o.pt_rejected);
            // upper tail only: a statistic below its critical value never rejects
            if o.ptt_reject {
                prop_assert!(o.rt.standardized > o.crit_rt || o.ut.standardized > o.crit_ut);
            }
        }
    }
}
