//! Thin wrappers around rustfft with a per-thread planner cache.

use num_complex::Complex64;
use rustfft::FftPlanner;
use std::cell::RefCell;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

/// Unnormalized forward transform `X_k = sum_j x_j e^{-2 pi i j k / n}`, in place.
pub(crate) fn fft_in_place(buf: &mut [Complex64]) {
    PLANNER.with(|p| p.borrow_mut().plan_fft_forward(buf.len()).process(buf));
}

/// Normalized inverse transform `x_j = (1/n) sum_k X_k e^{+2 pi i j k / n}`, in place.
pub(crate) fn ifft_in_place(buf: &mut [Complex64]) {
    let scale = 1.0 / buf.len() as f64;
    ifft_raw_in_place(buf);
    for v in buf.iter_mut() {
        *v *= scale;
    }
}

/// Unnormalized inverse transform `sum_k X_k e^{+2 pi i j k / n}`, in place.
pub(crate) fn ifft_raw_in_place(buf: &mut [Complex64]) {
    PLANNER.with(|p| p.borrow_mut().plan_fft_inverse(buf.len()).process(buf));
}
