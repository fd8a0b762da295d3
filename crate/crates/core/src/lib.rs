//! Robust score-type M-tests for the intercept of a simple linear regression
//! when the slope is suspected to be zero.
//!
//! Three tests of `H0: theta = 0` in `x_i = theta + beta c_i + e_i` are built
//! from the M-statistics `M_n1` and `M_n2`:
//!
//! * **UT** (unrestricted): slope treated as a nuisance, `M_n1(0, beta_tilde)`.
//! * **RT** (restricted): slope fixed at zero, `M_n1(0, 0)`.
//! * **PTT** (pre-test test): a preliminary test of `beta = 0` based on
//!   `M_n2(theta_tilde, 0)` picks RT when it accepts and UT when it rejects.
//!
//! [`power`] evaluates their asymptotic power functions under local
//! alternatives, [`testing`] runs them on data, and [`montecarlo`] checks the
//! asymptotics by simulation.
//!
//! ```
//! use pretest_core::{population_moments, power_ptt, run_ptt, ErrorDist, PowerParams, Sample, ScoreFunction, TestConfig};
//!
//! let c: Vec<f64> = (0..200).map(|i| (i % 2) as f64).collect();
//! let x: Vec<f64> = c.iter().enumerate().map(|(i, c)| 0.3 + 0.1 * c + ((i * 37 % 17) as f64 - 8.0) / 8.0).collect();
//! let outcome = run_ptt(&TestConfig::default(), &Sample::from_columns(x, c)?)?;
//! assert_eq!(outcome.pt_rejected, outcome.branch == pretest_core::Branch::UsedUt);
//!
//! let pop = population_moments(&ScoreFunction::default(), &ErrorDist::StandardNormal)?;
//! let size = power_ptt(&PowerParams::new(0.5, 0.5, pop.sigma0(), pop.gamma).at(0.0, 2.0))?;
//! assert!((size - 0.188).abs() < 1e-3);
//! # Ok::<(), pretest_core::Error>(())
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod design;
pub mod error;
pub mod gauss;
pub mod montecarlo;
pub mod mstat;
pub mod power;
pub mod quadrature;
mod roots;
pub mod score;
pub mod testing;

pub use design::Design;
pub use error::{Error, Result};
pub use gauss::{orthant, std_normal_cdf, std_normal_quantile, OrthantQuery};
pub use montecarlo::{
    empirical_vs_asymptotic, population_moments, simulate, Comparison, ErrorDist,
    PopulationMoments, Regressor, SimConfig, SimResult,
};
pub use mstat::{beta_tilde, estimate_all, m1, m2, theta_tilde, MEstimates, Sample};
pub use power::{
    compare_region, power_ptt, power_ptt_components, power_rt, power_ut, OrderingReport,
    PowerParams,
};
pub use roots::{MAX_BISECTIONS, ROOT_TOL};
pub use score::{ScoreFunction, DEFAULT_HUBER_K};
pub use testing::{run_ptt, stat_pt, stat_rt, stat_ut, Branch, Statistic, TestConfig, TestOutcome};
