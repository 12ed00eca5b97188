//! Error type shared by every fallible operation in the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while building grids, pairs, sections, or
/// decompositions.
///
/// Variants are deliberately specific: callers (in particular the CLI) map
/// them onto distinct exit codes, separating usage errors from genuine
/// numerical-instability reports.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// Grid resolution below the supported minimum.
    #[error("grid needs at least 8 points, got {0}")]
    GridTooSmall(usize),

    /// A requested coefficient count exceeds what the grid can alias-freely
    /// resolve (at most `n_points / 2`).
    #[error("degree bound {requested} exceeds grid capacity {max} (n_points/2)")]
    DegreeBoundTooLarge { requested: usize, max: usize },

    /// Sample vector length does not match the grid it claims to live on.
    #[error("expected {expected} samples for the grid, got {got}")]
    SampleCountMismatch { expected: usize, got: usize },

    /// Two sample vectors from different grids were combined.
    #[error("grids disagree: {0} vs {1} points")]
    GridMismatch(usize, usize),

    /// A point that must lie strictly inside the unit disk does not.
    #[error("|z| = {0} is not strictly less than 1")]
    NotInDisk(f64),

    /// Coefficient or sample data contains NaN or infinity.
    #[error("non-finite value encountered in {0}")]
    NonFinite(&'static str),

    /// The family parameter must be strictly positive.
    #[error("alpha must be strictly positive, got {0}")]
    InvalidAlpha(f64),

    /// Outer-function construction needs strictly positive modulus samples.
    #[error("boundary modulus must be strictly positive (sample {index} is {value})")]
    NonpositiveModulus { index: usize, value: f64 },

    /// Boundary modulus of a candidate `a` escaped the closed unit interval.
    #[error("mate construction needs |a| <= 1 everywhere (sample {index} is {value})")]
    ModulusExceedsOne { index: usize, value: f64 },

    /// The log-modulus quadrature came out NaN/Inf, so the data is not
    /// log-integrable at this resolution.
    #[error("log-modulus quadrature diverged; boundary data not log-integrable")]
    NonIntegrableLogModulus,

    /// An operation that needs a nonzero function received zero.
    #[error("input function is identically zero")]
    ZeroFunction,

    /// Toeplitz section size exceeds what the symbol grid resolves.
    #[error("section size {requested} exceeds grid capacity {max} (n_points/2)")]
    SectionTooLarge { requested: usize, max: usize },

    /// A finite-section linear solve hit an effectively singular matrix and
    /// was not silently regularized.
    #[error("finite-section solve unstable: smallest singular value {sigma_min:.3e} below {limit:.3e}")]
    SectionSolveUnstable { sigma_min: f64, limit: f64 },

    /// Operation requires the half-integer parameter form `alpha = n + 1/2`.
    #[error("alpha = {0} is not of the half-integer form n + 1/2 with n >= 1")]
    NotHalfInteger(f64),

    /// Operation requires `n >= 1` shift-basis vectors but the parameter
    /// range gives `n = 0`.
    #[error("no backward-shift basis: alpha = {0} lies in the n = 0 range")]
    EmptyShiftBasis(f64),

    /// A decomposition was requested for a function the membership sweep
    /// rejects.
    #[error("function is not a member of H(b) for alpha = {alpha} (verdict: {verdict})")]
    NotMember { alpha: f64, verdict: &'static str },

    /// Division by `(1-z)^alpha` produced a quotient whose coefficient tail
    /// grows, signalling that the quotient leaves the Hardy space.
    #[error("division by (1-z)^{alpha} unstable: quotient tail grows (energy exponent {exponent:.3})")]
    DivisionUnstable { alpha: f64, exponent: f64 },

    /// Generic precondition violation with a short message.
    #[error("{0}")]
    InvalidInput(&'static str),
}
