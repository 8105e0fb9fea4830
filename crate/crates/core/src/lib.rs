//! Exact Toeplitz determinants and minors, skew Schur specializations, the
//! closed forms they admit, and brute-force constant-term cross-checks.

pub mod asymptotics;
pub mod biorthogonal;
pub mod closedforms;
pub mod error;
pub mod laurent;
pub mod matrix;
pub mod oracle;
pub mod params;
pub mod partitions;
pub mod scalar;
pub mod suites;
pub mod symbols;
pub mod symfunc;
pub mod tableaux;
pub mod toeplitz;

pub use error::{Error, Result};
