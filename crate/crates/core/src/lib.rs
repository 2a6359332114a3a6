//! Loewner evolutions in four geometries, closed-form and quadrature SLE
//! formulas, and Monte Carlo estimators over SLE ensembles.

pub mod analytic;
pub mod estimators;
pub mod loewner;
pub mod parallel;
pub mod quad;

use thiserror::Error;

pub use num_complex::Complex64 as C64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SleError {
    #[error("annular evolution requested up to t={horizon} but the modulus is p={p}")]
    AnnularTimeExceeded { horizon: f64, p: f64 },
    #[error("integrator produced a non-finite state at t={t}")]
    NonFiniteState { t: f64 },
    #[error("backward trace integration left the domain at t={t}")]
    TipEscape { t: f64 },
    #[error("boundary drift {drift:.3e} exceeds bound at t={t}")]
    SingularDrift { t: f64, drift: f64 },
    #[error("invalid parameter: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, SleError>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(SleError::Domain(msg.into()))
}
