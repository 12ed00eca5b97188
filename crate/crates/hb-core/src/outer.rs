//! Outer functions reconstructed from boundary modulus data.
//!
//! An outer function is determined by its boundary log-modulus through the
//! Herglotz integral
//! `F(z) = exp{ (1/2 pi) \int (e^{it} + z) / (e^{it} - z) log w(t) dt }`,
//! which is normalized so that `F(0) = exp(mean log w) > 0`.
//!
//! Two evaluation routes are provided:
//!
//! * [`herglotz_exp_at`] / [`outer_at`] evaluate `F` at one interior point by
//!   midpoint quadrature of the kernel — robust for any `|z| < 1`.
//! * [`outer_trace_from_log_modulus`] produces the boundary trace in one shot:
//!   the modulus is kept *exactly* as supplied and only the phase comes from
//!   the discrete conjugate function (the imaginary part of the analytic
//!   completion of `log w`). Keeping the modulus exact is what lets pair
//!   constructions satisfy `|a|^2 + |b|^2 = 1` at the nodes to near machine
//!   precision.

use crate::error::{Error, Result};
use crate::grid::{BoundaryGrid, BoundarySamples, DiskPoint};
use crate::projection::analytic_completion;
use num_complex::Complex64;

/// Validates a log-modulus vector against a grid.
fn check_log_modulus(grid: BoundaryGrid, log_modulus: &[f64]) -> Result<()> {
    if log_modulus.len() != grid.n_points() {
        return Err(Error::SampleCountMismatch {
            expected: grid.n_points(),
            got: log_modulus.len(),
        });
    }
    if log_modulus.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonIntegrableLogModulus);
    }
    Ok(())
}

/// Evaluates `exp` of the Herglotz integral of the given boundary
/// log-modulus at an interior point.
///
/// The quadrature is the plain midpoint rule; the result at `z = 0` is
/// `exp(mean log w)`, which is real and strictly positive.
pub fn herglotz_exp_at(
    grid: BoundaryGrid,
    log_modulus: &[f64],
    z: DiskPoint,
) -> Result<Complex64> {
    check_log_modulus(grid, log_modulus)?;
    let p = grid.n_points();
    let z = z.z();
    let mut acc = Complex64::new(0.0, 0.0);
    for (j, &lw) in log_modulus.iter().enumerate() {
        let e = grid.point(j);
        acc += (e + z) / (e - z) * lw;
    }
    acc /= p as f64;
    if !(acc.re.is_finite() && acc.im.is_finite()) {
        return Err(Error::NonIntegrableLogModulus);
    }
    Ok(acc.exp())
}

/// Evaluates the outer function with the given nonnegative boundary modulus
/// at an interior point.
///
/// Rejects nonpositive or non-finite modulus samples; a quadrature that comes
/// out NaN/Inf is reported as non-log-integrable data.
pub fn outer_at(w: &BoundarySamples, z: DiskPoint) -> Result<Complex64> {
    let log_modulus = log_modulus_of(w)?;
    herglotz_exp_at(w.grid(), &log_modulus, z)
}

/// Extracts `log w` from samples that are expected to be strictly positive
/// reals (stored in the complex sample container).
fn log_modulus_of(w: &BoundarySamples) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(w.values().len());
    for (index, v) in w.values().iter().enumerate() {
        let value = v.re;
        if v.im != 0.0 || !value.is_finite() || value <= 0.0 {
            return Err(Error::NonpositiveModulus { index, value });
        }
        out.push(value.ln());
    }
    Ok(out)
}

/// Boundary trace of the outer function with the given log-modulus.
///
/// The trace is `exp(log w) * exp(i * conjugate(log w))`: modulus exactly as
/// supplied, phase from the discrete conjugate function.
pub fn outer_trace_from_log_modulus(
    grid: BoundaryGrid,
    log_modulus: &[f64],
) -> Result<BoundarySamples> {
    check_log_modulus(grid, log_modulus)?;
    let real_samples = BoundarySamples::new(
        grid,
        log_modulus.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
    )?;
    let completion = analytic_completion(&real_samples);
    let values = log_modulus
        .iter()
        .zip(completion.values())
        .map(|(&lw, comp)| Complex64::from_polar(lw.exp(), comp.im))
        .collect();
    BoundarySamples::new(grid, values)
}
