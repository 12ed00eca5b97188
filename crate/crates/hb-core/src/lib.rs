//! Numerical laboratory for de Branges–Rovnyak spaces `H(b)` built from
//! nonextreme symbols, centered on the one-parameter family
//! `b_alpha / a_alpha = (1 - z)^(-alpha)`.
//!
//! The crate is organized bottom-up:
//!
//! * [`grid`] — midpoint boundary grids on the unit circle and sample vectors.
//! * [`series`] — truncated Taylor series in the Hardy-space coefficient model,
//!   binomial series of `(1 - z)^alpha`, Cauchy products.
//! * [`projection`] — discrete analytic/anti-analytic splitting (`P_+`, `P_-`)
//!   via the FFT on the midpoint grid.
//! * [`outer`] — outer functions from boundary log-modulus data (Herglotz
//!   integral) and their boundary traces.
//! * [`pair`] — Pythagorean pairs `(b, a)` with `|a|^2 + |b|^2 = 1` on the
//!   circle: the `(1-z)^alpha` family, generic quotients, and mates of a given
//!   outer function.
//! * [`limits`] — radial extrapolation at the boundary point `1`.
//! * [`toeplitz`] — finite sections of Toeplitz operators, singular-value
//!   probes, kernel-dimension estimates.
//! * [`space`] — the `H(b)` norm and inner product, reproducing kernels,
//!   membership sweeps, multiplier diagnostics.
//! * [`decompose`] — constructive decompositions `f = p + (1-z)^alpha h`
//!   (plus the half-integer correction space) and the backward-shift splitting
//!   of `T_{conj((1-z)^alpha)} H^2`.
//! * [`regularity`] — boundary regularity integrals with cutoff sweeps and
//!   convergence classification.
//!
//! All operations are pure functions of immutable inputs; everything is safe
//! to call concurrently. Randomness never enters the library itself — callers
//! that want randomized batteries seed their own generators.

pub mod decompose;
pub mod error;
mod fftutil;
pub mod grid;
pub mod limits;
pub mod outer;
pub mod pair;
pub mod projection;
pub mod regularity;
pub mod series;
pub mod space;
pub mod toeplitz;

pub use error::{Error, Result};
pub use grid::{BoundaryGrid, BoundarySamples, DiskPoint};
pub use series::CoeffSeries;

/// Re-export of the complex scalar type used throughout.
pub use num_complex::Complex64;
