//! Command-line front end for `pretest-core`.
//!
//! [`run`] takes the argument list and output streams and returns the process
//! exit code: 0 on success, 2 for usage and input errors, 3 when the data
//! cannot support the estimators (degenerate design, zero variance, no root).

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use pretest_core::{
    estimate_all, population_moments, power_ptt, power_rt, power_ut, run_ptt, simulate, Error,
    ErrorDist, PowerParams, ScoreFunction, SimConfig, TestConfig, DEFAULT_HUBER_K,
};

pub mod format;
pub mod parse;

use format::{sig6, table};

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DATA: i32 = 3;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::DegenerateDesign { .. }
            | Error::ZeroVariance { .. }
            | Error::NoSignChange { .. } => EXIT_DATA,
            _ => EXIT_USAGE,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError {
            code: 1,
            message: e.to_string(),
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError {
            code: 1,
            message: e.to_string(),
        }
    }
}

type CliResult<T = ()> = Result<T, CliError>;

fn usage_err(message: String) -> CliError {
    CliError::usage(message)
}

#[derive(Debug, Parser)]
#[command(
    name = "pretest",
    version,
    about = "Robust M-tests for a regression intercept when the slope is suspected to be zero"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the UT, RT, PT and pre-test test on a data file.
    Test(TestArgs),
    /// Print the constrained M-estimates and plug-in variances for a data file.
    Estimate(EstimateArgs),
    /// Tabulate asymptotic power of the UT, RT and PTT over a lambda grid (CSV).
    Power(PowerArgs),
    /// Size of the PTT over an alpha3 grid (CSV).
    SizeTable(SizeTableArgs),
    /// Monte Carlo rejection rates and statistic moments (CSV).
    Simulate(SimulateArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ScoreArgs {
    /// Score function: huber or identity.
    #[arg(long, default_value = "huber")]
    pub psi: String,
    /// Huber clip constant.
    #[arg(long, default_value_t = DEFAULT_HUBER_K)]
    pub k: f64,
}

impl ScoreArgs {
    pub fn score(&self) -> CliResult<ScoreFunction> {
        parse::score(&self.psi, self.k).map_err(usage_err)
    }
}

#[derive(Debug, Args)]
pub struct TestArgs {
    /// CSV file with header `x,c`.
    pub path: PathBuf,
    #[command(flatten)]
    pub score: ScoreArgs,
    #[arg(long, default_value_t = 0.05)]
    pub alpha1: f64,
    #[arg(long, default_value_t = 0.05)]
    pub alpha2: f64,
    #[arg(long, default_value_t = 0.05)]
    pub alpha3: f64,
    /// Test slope = beta0 instead of slope = 0 by using x - beta0 * c.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub beta0: f64,
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    /// CSV file with header `x,c`.
    pub path: PathBuf,
    #[command(flatten)]
    pub score: ScoreArgs,
}

#[derive(Debug, Clone, Args)]
pub struct DesignConstants {
    /// Limit of the regressor mean [default: 0.5, the zeros_ones design].
    #[arg(long, allow_hyphen_values = true)]
    pub cbar: Option<f64>,
    /// Limit of the centered regressor spread sqrt(sum (c - cbar)^2 / n) [default: 0.5].
    #[arg(long)]
    pub cstar: Option<f64>,
    /// Score standard deviation [default: population value for N(0,1) errors and the chosen score].
    #[arg(long)]
    pub sigma0: Option<f64>,
    /// Mean score derivative [default: population value for N(0,1) errors and the chosen score].
    #[arg(long)]
    pub gamma: Option<f64>,
    #[command(flatten)]
    pub score: ScoreArgs,
}

impl DesignConstants {
    pub fn params(&self) -> CliResult<PowerParams> {
        let pop = population_moments(&self.score.score()?, &ErrorDist::StandardNormal)?;
        let p = PowerParams::new(
            self.cbar.unwrap_or(0.5),
            self.cstar.unwrap_or(0.5),
            self.sigma0.unwrap_or(pop.sigma0()),
            self.gamma.unwrap_or(pop.gamma),
        );
        p.validate()?;
        Ok(p)
    }
}

#[derive(Debug, Args)]
pub struct PowerArgs {
    /// `a:b:step` or comma list.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub lambda1_grid: String,
    /// `a:b:step` or comma list.
    #[arg(long, default_value = "0:10:0.5", allow_hyphen_values = true)]
    pub lambda2_grid: String,
    /// One level for all tests, or `alpha1,alpha2,alpha3`.
    #[arg(long, default_value = "0.05")]
    pub alphas: String,
    #[command(flatten)]
    pub design: DesignConstants,
}

#[derive(Debug, Args)]
pub struct SizeTableArgs {
    #[arg(
        long,
        default_value = "0,0.1,0.2,0.5,1,2,4,10",
        allow_hyphen_values = true
    )]
    pub lambda2_list: String,
    #[arg(long, default_value = "0.05")]
    pub alpha2_list: String,
    /// `a:b:step` or comma list of pre-test levels.
    #[arg(long, default_value = "0.05:0.95:0.05")]
    pub alpha3_grid: String,
    #[arg(long, default_value_t = 0.05)]
    pub alpha1: f64,
    /// Size to aim for; the smallest alpha3 with size at most this is marked.
    #[arg(long, default_value_t = 0.05)]
    pub target: f64,
    #[command(flatten)]
    pub design: DesignConstants,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, default_value_t = 1000)]
    pub n: usize,
    #[arg(long, default_value_t = 1000)]
    pub reps: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub theta: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub beta: f64,
    /// normal, laplace[:scale], t:df or contaminated:eps,scale.
    #[arg(long, default_value = "normal")]
    pub dist: String,
    /// zeros_ones, neg1_zeros or neg1_pos1.
    #[arg(long, default_value = "zeros_ones")]
    pub design: String,
    /// One level for all tests, or `alpha1,alpha2,alpha3`.
    #[arg(long, default_value = "0.05")]
    pub alphas: String,
    #[command(flatten)]
    pub score: ScoreArgs,
}

impl SimulateArgs {
    pub fn config(&self) -> CliResult<SimConfig> {
        let [a1, a2, a3] = parse::alphas(&self.alphas).map_err(usage_err)?;
        let cfg = SimConfig {
            n: self.n,
            reps: self.reps,
            seed: self.seed,
            theta: self.theta,
            beta: self.beta,
            error_dist: parse::dist(&self.dist).map_err(usage_err)?,
            regressor: parse::design(&self.design).map_err(usage_err)?,
            test_config: TestConfig::new(self.score.score()?, a1, a2, a3)?,
        };
        cfg.validate().map_err(|e| CliError::usage(e.to_string()))?;
        Ok(cfg)
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match dispatch(&cli.command, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}

fn dispatch(cmd: &Command, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    match cmd {
        Command::Test(a) => cmd_test(a, out),
        Command::Estimate(a) => cmd_estimate(a, out),
        Command::Power(a) => cmd_power(a, out),
        Command::SizeTable(a) => cmd_size_table(a, out),
        Command::Simulate(a) => cmd_simulate(a, out, err),
    }
}

pub fn cmd_test(a: &TestArgs, out: &mut dyn Write) -> CliResult {
    let cfg = TestConfig::new(a.score.score()?, a.alpha1, a.alpha2, a.alpha3)?;
    if !a.beta0.is_finite() {
        return Err(CliError::usage("--beta0 must be finite"));
    }
    let mut sample = parse::data_file(&a.path)?;
    if a.beta0 != 0.0 {
        sample = sample.shift_slope(a.beta0);
    }
    let o = run_ptt(&cfg, &sample)?;

    let row = |name: &str, s: pretest_core::Statistic, crit: f64, level: f64| {
        vec![
            name.to_string(),
            sig6(s.raw),
            sig6(s.standardized),
            sig6(crit),
            sig6(level),
            (s.standardized > crit).to_string(),
        ]
    };
    table(
        out,
        &["test", "raw", "z", "critical", "alpha", "reject"],
        &[
            row("UT", o.ut, o.crit_ut, cfg.alpha1),
            row("RT", o.rt, o.crit_rt, cfg.alpha2),
            row("PT", o.pt, o.crit_pt, cfg.alpha3),
        ],
    )?;
    writeln!(
        out,
        "PTT: {} -> {}",
        o.branch,
        if o.ptt_reject {
            "reject"
        } else {
            "do not reject"
        }
    )?;
    writeln!(out)?;
    let e = &o.estimates;
    let kv: [(&str, String); 17] = [
        ("n", sample.n().to_string()),
        ("score", cfg.score.to_string()),
        ("beta0", a.beta0.to_string()),
        ("z_ut", o.ut.standardized.to_string()),
        ("z_rt", o.rt.standardized.to_string()),
        ("z_pt", o.pt.standardized.to_string()),
        ("tau_ut", o.crit_ut.to_string()),
        ("tau_rt", o.crit_rt.to_string()),
        ("tau_pt", o.crit_pt.to_string()),
        ("ut_reject", o.ut_reject().to_string()),
        ("rt_reject", o.rt_reject().to_string()),
        ("pt_reject", o.pt_rejected.to_string()),
        ("branch", o.branch.to_string()),
        ("ptt_reject", o.ptt_reject.to_string()),
        ("beta_tilde", e.beta_tilde.to_string()),
        ("theta_tilde", e.theta_tilde.to_string()),
        ("sigma0_hat", e.sigma0_hat().to_string()),
    ];
    for (k, v) in kv {
        writeln!(out, "{k}={v}")?;
    }
    Ok(())
}

pub fn cmd_estimate(a: &EstimateArgs, out: &mut dyn Write) -> CliResult {
    let score = a.score.score()?;
    let sample = parse::data_file(&a.path)?;
    let e = estimate_all(&score, &sample)?;
    let values = [
        ("theta_tilde", e.theta_tilde),
        ("beta_tilde", e.beta_tilde),
        ("s1_sq", e.s1_sq),
        ("s2_sq", e.s2_sq),
        ("s3_sq", e.s3_sq),
        ("gamma_hat_theta", e.gamma_hat_theta),
        ("gamma_hat_beta", e.gamma_hat_beta),
        ("sigma0_hat", e.sigma0_hat()),
    ];
    let rows: Vec<Vec<String>> = values
        .iter()
        .map(|(k, v)| vec![k.to_string(), sig6(*v)])
        .collect();
    table(out, &["quantity", "value"], &rows)?;
    writeln!(out)?;
    writeln!(out, "n={}", sample.n())?;
    writeln!(out, "score={score}")?;
    for (k, v) in values {
        writeln!(out, "{k}={v}")?;
    }
    Ok(())
}

fn csv_writer(out: &mut dyn Write) -> csv::Writer<&mut dyn Write> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out)
}

pub fn cmd_power(a: &PowerArgs, out: &mut dyn Write) -> CliResult {
    let l1 = parse::grid(&a.lambda1_grid).map_err(usage_err)?;
    let l2 = parse::grid(&a.lambda2_grid).map_err(usage_err)?;
    let [a1, a2, a3] = parse::alphas(&a.alphas).map_err(usage_err)?;
    let base = a.design.params()?.with_alphas(a1, a2, a3);
    base.validate()?;
    let mut w = csv_writer(out);
    w.write_record(["lambda1", "lambda2", "pi_ut", "pi_rt", "pi_ptt"])?;
    for &x in &l1 {
        for &y in &l2 {
            let p = base.at(x, y);
            let row = [x, y, power_ut(&p)?, power_rt(&p)?, power_ptt(&p)?];
            w.write_record(row.iter().map(f64::to_string))?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn cmd_size_table(a: &SizeTableArgs, out: &mut dyn Write) -> CliResult {
    let l2s = parse::list(&a.lambda2_list).map_err(usage_err)?;
    let a2s = parse::list(&a.alpha2_list).map_err(usage_err)?;
    let a3s = parse::grid(&a.alpha3_grid).map_err(usage_err)?;
    if !(a.target > 0.0 && a.target < 1.0) {
        return Err(CliError::usage(format!(
            "--target must be in (0, 1), got {}",
            a.target
        )));
    }
    let base = a.design.params()?;
    let mut w = csv_writer(out);
    w.write_record([
        "lambda2",
        "alpha1",
        "alpha2",
        "alpha3",
        "alpha_ptt",
        "is_min",
        "is_target",
    ])?;
    for &l2 in &l2s {
        for &a2 in &a2s {
            let sizes = a3s
                .iter()
                .map(|&a3| power_ptt(&base.at(0.0, l2).with_alphas(a.alpha1, a2, a3)))
                .collect::<Result<Vec<_>, _>>()?;
            let min = sizes
                .iter()
                .enumerate()
                .min_by(|x, y| x.1.total_cmp(y.1))
                .map(|(i, _)| i);
            let target = sizes.iter().position(|&s| s <= a.target);
            for (i, (&a3, &size)) in a3s.iter().zip(&sizes).enumerate() {
                let row = [
                    l2.to_string(),
                    a.alpha1.to_string(),
                    a2.to_string(),
                    a3.to_string(),
                    size.to_string(),
                    (min == Some(i)).to_string(),
                    (target == Some(i)).to_string(),
                ];
                w.write_record(&row)?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

pub fn cmd_simulate(a: &SimulateArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    let cfg = a.config()?;
    let r = simulate(&cfg)?;
    if r.failed_reps > 0 {
        writeln!(
            err,
            "warning: {} of {} replications failed and were excluded",
            r.failed_reps, cfg.reps
        )?;
    }
    let tc = &cfg.test_config;
    let mut header: Vec<String> = [
        "n", "reps", "seed", "theta", "beta", "dist", "design", "score", "alpha1", "alpha2",
        "alpha3",
    ]
    .map(String::from)
    .to_vec();
    let mut row = vec![
        cfg.n.to_string(),
        cfg.reps.to_string(),
        cfg.seed.to_string(),
        cfg.theta.to_string(),
        cfg.beta.to_string(),
        cfg.error_dist.to_string(),
        cfg.regressor.to_string(),
        tc.score.to_string(),
        tc.alpha1.to_string(),
        tc.alpha2.to_string(),
        tc.alpha3.to_string(),
    ];
    for (k, v) in r.fields() {
        header.push(k.to_string());
        row.push(v.to_string());
    }
    let mut w = csv_writer(out);
    w.write_record(&header)?;
    w.write_record(&row)?;
    w.flush()?;
    Ok(())
}
