//! Crate error types.

use thiserror::Error;

/// Rejection of observed data that violates the recruitment-record contract.
#[derive(Error, Debug)]
pub enum DataError {
    #[error("no subjects in input")]
    Empty,
    #[error("duplicate subject id `{0}`")]
    DuplicateId(String),
    #[error("duplicate recruitment time {0}: event order must be strict")]
    DuplicateTime(String),
    #[error("non-finite recruitment time for subject `{0}`")]
    NonFiniteTime(String),
    #[error("subject `{subject}` names unknown recruiter `{recruiter}`")]
    UnknownRecruiter { subject: String, recruiter: String },
    #[error("subject `{subject}` recruited at or before its recruiter `{recruiter}`")]
    RecruiterNotEarlier { subject: String, recruiter: String },
    #[error("subject `{subject}` reports degree {degree} but has {incident} recruitment edges")]
    DegreeTooSmall {
        subject: String,
        degree: u32,
        incident: u32,
    },
    #[error("subject `{subject}` reports non-positive degree")]
    DegreeNotPositive { subject: String },
    #[error("subject `{subject}` made {recruits} recruits with only {coupons} coupons")]
    CouponOverdraw {
        subject: String,
        recruits: u32,
        coupons: u32,
    },
    #[error("row {row}: {message}")]
    MalformedRow { row: usize, message: String },
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Invalid(String),
}

/// Rejection of a prior or sampler configuration before any sampling starts.
#[derive(Error, Debug)]
pub enum ConfigError {
    #[error("improper posterior (alpha + c <= 1): alpha={alpha}, c={c}")]
    ImproperPosterior { alpha: f64, c: f64 },
    #[error("prior hyperparameter {name} must be positive, got {value}")]
    NonPositivePrior { name: &'static str, value: f64 },
    #[error("power-law exponent c must be nonnegative, got {0}")]
    NegativeExponent(f64),
    #[error("burn-in {burn_in} must be smaller than total iterations {iterations}")]
    BurnInTooLarge { burn_in: u64, iterations: u64 },
    #[error("thinning interval must be at least 1")]
    ZeroThin,
    #[error("at least one chain required")]
    ZeroChains,
    #[error("{0}")]
    Invalid(String),
}

/// Failure inside a numerical kernel or sampling step.
#[derive(Error, Debug)]
pub enum NumericalError {
    #[error(
        "population size {pop_size} below binomial support for subject {subject}: \
         needs at least {required}"
    )]
    BinomialSupport {
        subject: usize,
        pop_size: u64,
        required: u64,
    },
    #[error("beta function argument nonpositive ({argument}); population size {pop_size} too small")]
    BetaDomain { argument: f64, pop_size: u64 },
    #[error("population size {pop_size} below the feasibility floor {min}")]
    BelowMinimum { pop_size: u64, min: u64 },
    #[error("size proposal failed to clear the feasibility floor after {attempts} resamples")]
    ProposalExhausted { attempts: u32 },
    #[error("{0}")]
    Degenerate(String),
}

/// Umbrella error for operations that can fail in more than one category.
#[derive(Error, Debug)]
pub enum Error {
    #[error(transparent)]
    Data(#[from] DataError),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Numerical(#[from] NumericalError),
}
