//! Exact Virasoro algebra engine.
//!
//! Verma modules truncated by level, the operators `G_f` implementing
//! conformal maps on them, and the differential operators `S_n`, `R_n`
//! acting on polynomials in Loewner expansion coefficients.

pub mod checks;
pub mod coeff;
pub mod gf;
pub mod kac;
pub mod poly;
pub mod scalar;
pub mod series;
pub mod verma;

use thiserror::Error;

pub use poly::{MPoly, RatFn, UPoly};
pub use scalar::{rat, Field, Rational, Ring};
pub use series::Series;
pub use verma::{partitions, Partition, VermaModule, VermaVector};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VirasoroError {
    #[error("mode action reaches level {level} beyond truncation {max}")]
    TruncationOverflow { level: u32, max: u32 },
    #[error("variation references f_-{index} beyond cutoff {cutoff}")]
    CutoffExceeded { index: usize, cutoff: usize },
    #[error("invalid parameter: {0}")]
    Domain(String),
}
