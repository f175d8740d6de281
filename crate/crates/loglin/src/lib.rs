//! Exact completion solver for log-linear models.
//!
//! Given a non-negative integer matrix `A` and a set `E` of observed
//! coordinates, this crate decides whether a partial observation extends
//! to a probability distribution in the log-linear model of `A`,
//! enumerates the completions, and computes the defining polynomials of
//! the algebraic boundary of the completable region.
//!
//! The pipeline is exact where it matters: integer kernel lattices via
//! Hermite normal form, toric ideals via saturation, facial sets via
//! exact-rational simplex, and Gröbner elimination over ℚ. The one
//! numerical step (lifting an observation through logs and exponentials)
//! is certified a posteriori by rational reconstruction.

pub mod error;
pub mod faces;
pub mod linalg;
pub mod lp;
pub mod poly;
pub mod rat;
pub mod boundary;
pub mod completion;
pub mod sampler;
pub mod toric;

#[cfg(test)]
pub(crate) mod testmodels;

pub use error::{Error, Result};
