//! Discrete Fourier analysis on the midpoint grid: the analytic projection
//! `P_+`, its complement `P_-`, and synthesis back to grid samples.
//!
//! On the midpoint grid `t_j = 2 pi (j + 1/2) / P` the quadrature for the
//! Fourier coefficient at frequency `nu` picks up the half-sample phase
//! `e^{-i pi nu / P}` relative to the plain FFT; both directions below apply
//! that phase explicitly, so analysis followed by synthesis is exact to
//! rounding for band-limited data.

use crate::error::{Error, Result};
use crate::fftutil;
use crate::grid::{BoundaryGrid, BoundarySamples};
use crate::series::CoeffSeries;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Signed frequency represented by FFT slot `m` on a grid of `p` points:
/// `m` itself in the lower half, `m - p` in the upper half.
#[inline]
fn slot_frequency(m: usize, p: usize) -> i64 {
    if m < p / 2 {
        m as i64
    } else {
        m as i64 - p as i64
    }
}

/// All `P` discrete Fourier coefficients of the samples.
///
/// Slot `m` holds the coefficient at frequency `m` for `m < P/2` and at the
/// negative frequency `m - P` for `m >= P/2`.
pub fn full_spectrum(samples: &BoundarySamples) -> Vec<Complex64> {
    let p = samples.grid().n_points();
    let mut buf = samples.values().to_vec();
    fftutil::fft_in_place(&mut buf);
    let scale = 1.0 / p as f64;
    for (m, v) in buf.iter_mut().enumerate() {
        let nu = slot_frequency(m, p) as f64;
        let phase = Complex64::from_polar(scale, -PI * nu / p as f64);
        *v *= phase;
    }
    buf
}

/// Synthesizes grid samples from a full spectrum in the slot order produced
/// by [`full_spectrum`].
pub fn synthesize_spectrum(spectrum: &[Complex64], grid: BoundaryGrid) -> Result<BoundarySamples> {
    let p = grid.n_points();
    if spectrum.len() != p {
        return Err(Error::SampleCountMismatch {
            expected: p,
            got: spectrum.len(),
        });
    }
    let mut buf = spectrum.to_vec();
    for (m, v) in buf.iter_mut().enumerate() {
        let nu = slot_frequency(m, p) as f64;
        let phase = Complex64::from_polar(1.0, PI * nu / p as f64);
        *v *= phase;
    }
    fftutil::ifft_raw_in_place(&mut buf);
    BoundarySamples::new(grid, buf)
}

/// Orthogonal projection onto the analytic side: the first `degree_bound`
/// nonnegative-frequency Fourier coefficients, as a Taylor series.
///
/// `degree_bound` may not exceed `P/2`: beyond that the midpoint grid cannot
/// separate positive from negative frequencies.
pub fn project_plus(samples: &BoundarySamples, degree_bound: usize) -> Result<CoeffSeries> {
    let p = samples.grid().n_points();
    if degree_bound == 0 {
        return Err(Error::InvalidInput("degree bound must be at least 1"));
    }
    if degree_bound > p / 2 {
        return Err(Error::DegreeBoundTooLarge {
            requested: degree_bound,
            max: p / 2,
        });
    }
    let mut spectrum = full_spectrum(samples);
    spectrum.truncate(degree_bound);
    CoeffSeries::new(spectrum)
}

/// The complementary projection `P_- = I - P_+`, returned as boundary samples
/// of the strictly-negative-frequency part.
///
/// Together with a full-width `project_plus` (degree bound `P/2`) this
/// reconstructs the input exactly to rounding: the two projections split the
/// discrete spectrum into disjoint slot ranges.
pub fn project_minus(samples: &BoundarySamples) -> BoundarySamples {
    let p = samples.grid().n_points();
    let mut spectrum = full_spectrum(samples);
    for v in spectrum.iter_mut().take(p / 2) {
        *v = Complex64::new(0.0, 0.0);
    }
    synthesize_spectrum(&spectrum, samples.grid())
        .expect("spectrum length matches grid by construction")
}

/// Samples of the analytic polynomial with the given coefficients at the grid
/// nodes (exact polynomial evaluation realized through the FFT).
pub fn synthesize(series: &CoeffSeries, grid: BoundaryGrid) -> Result<BoundarySamples> {
    let p = grid.n_points();
    if series.len() > p {
        return Err(Error::DegreeBoundTooLarge {
            requested: series.len(),
            max: p,
        });
    }
    // vals_j = sum_m c_m e^{i m t_j} with e^{i m t_j} = e^{i pi m / P} e^{2 pi i j m / P}.
    let mut buf = vec![Complex64::new(0.0, 0.0); p];
    for (m, &c) in series.coeffs().iter().enumerate() {
        buf[m] = c * Complex64::from_polar(1.0, PI * m as f64 / p as f64);
    }
    fftutil::ifft_raw_in_place(&mut buf);
    BoundarySamples::new(grid, buf)
}

/// Analytic completion of real boundary data: returns samples of the function
/// whose real part matches the input and whose spectrum is supported on
/// nonnegative frequencies (the imaginary part is the conjugate function).
///
/// Used by the outer-function constructor: `exp` of the completion of
/// `log |f|` is the outer function with positive value at the origin.
pub fn analytic_completion(samples: &BoundarySamples) -> BoundarySamples {
    let p = samples.grid().n_points();
    let spectrum = full_spectrum(samples);
    let mut completed = vec![Complex64::new(0.0, 0.0); p];
    completed[0] = spectrum[0];
    for m in 1..p / 2 {
        completed[m] = 2.0 * spectrum[m];
    }
    // The Nyquist slot has no analytic counterpart on the midpoint grid and
    // is dropped; for smooth real data its coefficient is already at the
    // truncation floor.
    synthesize_spectrum(&completed, samples.grid())
        .expect("spectrum length matches grid by construction")
}
