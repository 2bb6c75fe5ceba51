use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("Bloch vector length {length} exceeds 1")]
    BlochNorm { length: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("invariant violation at t = {time}: {what}")]
    InvariantViolation { time: f64, what: String },

    #[error("invalid step size dt = {0}")]
    StepSize(f64),

    #[error("fit failed: {0}")]
    Fit(String),

    #[error("both path amplitudes vanish")]
    DegenerateAmplitudes,

    #[error("arm lengths differ: {arm1} vs {arm2}")]
    UnequalArms { arm1: f64, arm2: f64 },

    #[error("config error: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Process exit code used by the command-line driver.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) => 2,
            _ => 3,
        }
    }

    /// Short machine-readable category.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::BlochNorm { .. } => "bloch_norm",
            Error::Domain(_) => "domain",
            Error::NonFinite(_) => "non_finite",
            Error::InvariantViolation { .. } => "invariant_violation",
            Error::StepSize(_) => "step_size",
            Error::Fit(_) => "fit",
            Error::DegenerateAmplitudes => "degenerate_amplitudes",
            Error::UnequalArms { .. } => "unequal_arms",
            Error::Config(_) => "config",
        }
    }
}
