//! Evaluation toolkit for the finite trigonometric sums
//! `S_n(phi,a) = sum_{l=1}^{n-1} csc(phi + a*pi*l/n)` and the analogous
//! secant, tangent and cotangent sums.
//!
//! The crate provides:
//!
//! - direct compensated evaluation in native or double-wide precision
//!   ([`sums`]),
//! - alternative representations through cotangent identities, finite and
//!   infinite digamma series, a mixed closed form, and an improper integral
//!   ([`representations`]),
//! - complete asymptotic expansions with explicit tail coefficients and a
//!   leading-term regime classifier ([`asymptotics`]),
//! - rigorous two-sided bounds together with the classical one-sided bounds
//!   from the literature ([`bounds`]),
//! - an executable corpus of classical trigonometric and digamma identities
//!   ([`identities`]),
//! - the supporting special-function and exact-arithmetic layers
//!   ([`gammafun`], [`numerics`], [`dd`], [`ddmath`], [`quadrature`]).

pub mod asymptotics;
pub mod bounds;
pub mod dd;
pub mod ddmath;
pub mod gammafun;
pub mod identities;
pub mod numerics;
pub mod quadrature;
pub mod representations;
pub mod sums;
pub(crate) mod trigpoly;

pub use dd::DoubleWide;

use thiserror::Error as ThisError;

/// Errors shared across the evaluation layers.
#[derive(ThisError, Debug, Clone, PartialEq)]
pub enum Error {
    /// A summand of a direct evaluation sits on a pole of its function.
    #[error("term l={0} lies on a pole of the summed function")]
    PoleHit(usize),
    /// A digamma/polygamma argument hit a non-positive integer.
    #[error("digamma pole at non-positive integer {0}")]
    DigammaPole(i64),
    /// Parameters outside the validity domain of a formula; the payload
    /// quotes the violated condition.
    #[error("domain violation: {0}")]
    Domain(String),
    /// A series failed to reach the requested tolerance within its budget.
    #[error("series did not converge: {0}")]
    NonConvergence(String),
    /// Quadrature failed to reach the requested tolerance.
    #[error("quadrature failure: {0}")]
    QuadratureFailure(String),
    /// Malformed input (lengths, ranges, non-finite values).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// Evaluation precision tier. `Wide` routes everything through
/// [`DoubleWide`] arithmetic and is the oracle tier used by tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Precision {
    Native,
    Wide,
}
