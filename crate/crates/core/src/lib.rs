//! Estimation of hidden population size from respondent-driven sampling (RDS)
//! data, with a continuous-time recruitment simulator for validation.

pub mod data;
pub mod error;
pub mod real;
pub mod special;

pub use error::{ConfigError, DataError, Error, NumericalError};
pub use real::{Real, Scalar};
