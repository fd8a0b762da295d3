use thiserror::Error;

/// Errors raised by estimation, testing and power evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("need at least 2 observations, got {0}")]
    EmptyInput(usize),

    #[error("length mismatch: {responses} responses but {regressors} regressor values")]
    LengthMismatch { responses: usize, regressors: usize },

    #[error("degenerate design: centered sum of squares of the regressor is {cstar2} (constant regressor)")]
    DegenerateDesign { cstar2: f64 },

    #[error("estimating equation has no sign change on [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("zero variance estimate for the {statistic} statistic")]
    ZeroVariance { statistic: &'static str },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid simulation config: {0}")]
    InvalidConfig(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
