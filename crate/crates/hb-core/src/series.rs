//! Truncated Taylor series in the Hardy-space coefficient model.
//!
//! A [`CoeffSeries`] holds the first `M` Taylor coefficients `c_0..c_{M-1}` of
//! an analytic function on the disk. The squared Hardy norm is the plain
//! coefficient energy `sum |c_k|^2`, inner products are coefficient inner
//! products, and multiplication is the Cauchy product. Everything downstream
//! (norms, Toeplitz actions, decompositions) is phrased in this model.

use crate::error::{Error, Result};
use crate::fftutil;
use crate::grid::DiskPoint;
use num_complex::Complex64;

/// Cauchy products fall back to the FFT once the direct `O(m n)` cost would
/// exceed this many scalar multiplications.
const DIRECT_CONV_LIMIT: usize = 1 << 18;

/// First `M` Taylor coefficients of an analytic function; `M` is the
/// `degree_bound` (the length of the coefficient window, one more than the
/// largest representable degree).
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffSeries {
    coeffs: Vec<Complex64>,
}

impl CoeffSeries {
    /// Wraps a coefficient vector, rejecting empty or non-finite data.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput("series needs at least one coefficient"));
        }
        if !coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite()) {
            return Err(Error::NonFinite("series coefficients"));
        }
        Ok(Self { coeffs })
    }

    /// Series of given length with all coefficients zero.
    pub fn zeros(m: usize) -> Self {
        Self {
            coeffs: vec![Complex64::new(0.0, 0.0); m.max(1)],
        }
    }

    /// The constant function `c`.
    pub fn constant(c: Complex64, m: usize) -> Self {
        let mut s = Self::zeros(m);
        s.coeffs[0] = c;
        s
    }

    /// Builds a series from real coefficients.
    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Number of stored coefficients (the degree bound `M`).
    #[inline]
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    /// True when the stored window is the single coefficient `0`.
    pub fn is_empty(&self) -> bool {
        self.coeffs.iter().all(|c| c.norm_sqr() == 0.0)
    }

    /// Coefficient `c_k`, zero beyond the stored window.
    #[inline]
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// Read-only access to the coefficient window.
    #[inline]
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Consumes the series, returning the raw coefficients.
    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Squared Hardy norm `sum |c_k|^2`.
    pub fn h2_norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Hardy norm.
    pub fn h2_norm(&self) -> f64 {
        self.h2_norm_sq().sqrt()
    }

    /// Hardy inner product `<self, other> = sum self_k * conj(other_k)`.
    pub fn h2_inner(&self, other: &Self) -> Complex64 {
        let n = self.len().min(other.len());
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..n {
            acc += self.coeffs[k] * other.coeffs[k].conj();
        }
        acc
    }

    /// Horner evaluation at a point strictly inside the disk.
    pub fn evaluate(&self, z: DiskPoint) -> Complex64 {
        self.evaluate_inner(z.z())
    }

    fn evaluate_inner(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Backward shift applied `k` times: drops the leading `k` coefficients.
    pub fn shift_star(&self, k: usize) -> Self {
        if k >= self.coeffs.len() {
            return Self::zeros(1);
        }
        Self {
            coeffs: self.coeffs[k..].to_vec(),
        }
    }

    /// Forward shift applied `k` times: multiplication by `z^k` (the window
    /// grows by `k`).
    pub fn shift(&self, k: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); k];
        coeffs.extend_from_slice(&self.coeffs);
        Self { coeffs }
    }

    /// Exact termwise derivative: `c_k -> (k+1) c_{k+1}`.
    pub fn differentiate(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::zeros(1);
        }
        let coeffs = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(i, &c)| c * (i as f64 + 1.0))
            .collect();
        Self { coeffs }
    }

    /// Derivative of order `k`.
    pub fn differentiate_n(&self, k: usize) -> Self {
        let mut s = self.clone();
        for _ in 0..k {
            s = s.differentiate();
        }
        s
    }

    /// Keeps the first `m` coefficients (padding with zeros if `m` exceeds
    /// the current window).
    pub fn truncate(&self, m: usize) -> Self {
        let m = m.max(1);
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(m, Complex64::new(0.0, 0.0));
        Self { coeffs }
    }

    /// Multiplies every coefficient by a scalar.
    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|&c| c * s).collect(),
        }
    }

    /// Coefficientwise sum; the result window covers both operands.
    pub fn add(&self, other: &Self) -> Self {
        let n = self.len().max(other.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect();
        Self { coeffs }
    }

    /// Coefficientwise difference; the result window covers both operands.
    pub fn sub(&self, other: &Self) -> Self {
        let n = self.len().max(other.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - other.coeff(k)).collect();
        Self { coeffs }
    }

    /// Truncated Cauchy product, keeping `out_len` coefficients.
    ///
    /// The first `min(out_len, m + n - 1)` coefficients equal those of the
    /// product of the underlying functions whenever both windows cover the
    /// contributing terms (coefficient `j` of the product only involves
    /// indices `<= j` of each factor).
    pub fn cauchy_product(&self, other: &Self, out_len: usize) -> Self {
        let coeffs = convolve(&self.coeffs, &other.coeffs, out_len.max(1));
        Self { coeffs }
    }
}

/// Taylor coefficients of `(1 - z)^alpha` (principal branch), computed by the
/// ratio recurrence `c_0 = 1`, `c_{k+1} = c_k (k - alpha) / (k + 1)`.
///
/// Works for every real `alpha` (negative values give the reciprocal powers);
/// for nonnegative integer `alpha` the tail beyond degree `alpha` is exactly
/// zero.
pub fn binomial_series(alpha: f64, m: usize) -> CoeffSeries {
    let m = m.max(1);
    let mut coeffs = Vec::with_capacity(m);
    let mut c = 1.0f64;
    coeffs.push(Complex64::new(c, 0.0));
    for k in 0..m - 1 {
        c *= (k as f64 - alpha) / (k as f64 + 1.0);
        coeffs.push(Complex64::new(c, 0.0));
    }
    CoeffSeries { coeffs }
}

/// Geometric series `(1, q, q^2, ...)` with `m` terms: the Taylor expansion
/// of `1 / (1 - q z)`.
pub fn geometric_series(q: Complex64, m: usize) -> CoeffSeries {
    let m = m.max(1);
    let mut coeffs = Vec::with_capacity(m);
    let mut p = Complex64::new(1.0, 0.0);
    for _ in 0..m {
        coeffs.push(p);
        p *= q;
    }
    CoeffSeries { coeffs }
}

/// Adjoint-multiplier action in coefficient space:
/// `out_j = sum_m conj(weights_m) * f_{m+j}` for `j = 0..f.len()`.
///
/// This is the matrix action of the adjoint of "multiply by the analytic
/// function with Taylor coefficients `weights`" on the coefficient window of
/// `f`; weight entries beyond the window of `f` cannot contribute and are
/// ignored.
pub fn adjoint_apply(weights: &[Complex64], f: &CoeffSeries) -> CoeffSeries {
    let l = f.len();
    let w: Vec<Complex64> = weights.iter().take(l).map(|c| c.conj()).collect();
    if w.is_empty() {
        return CoeffSeries::zeros(l);
    }
    // out_j = sum_m w_m f_{m+j} is a cross-correlation; realize it as a
    // convolution against the reversed input and reverse back.
    let fr: Vec<Complex64> = f.coeffs().iter().rev().copied().collect();
    let conv = convolve(&w, &fr, l + w.len() - 1);
    let coeffs = (0..l).map(|j| conv[l - 1 - j]).collect();
    CoeffSeries { coeffs }
}

/// Truncated linear convolution `out_s = sum_m a_m b_{s-m}`, `s < out_len`.
fn convolve(a: &[Complex64], b: &[Complex64], out_len: usize) -> Vec<Complex64> {
    let full = a.len() + b.len() - 1;
    let kept = out_len.min(full);
    // Only the leading `kept` coefficients matter, so the factors can be
    // clipped to that window before choosing a strategy.
    let a = &a[..a.len().min(kept)];
    let b = &b[..b.len().min(kept)];
    let zero = Complex64::new(0.0, 0.0);

    let direct_cost = a.len().saturating_mul(b.len());
    let mut out = if direct_cost <= DIRECT_CONV_LIMIT {
        let mut out = vec![zero; kept];
        for (m, &am) in a.iter().enumerate() {
            if am == zero {
                continue;
            }
            let top = kept.saturating_sub(m).min(b.len());
            for (n, &bn) in b[..top].iter().enumerate() {
                out[m + n] += am * bn;
            }
        }
        out
    } else {
        let size = (a.len() + b.len() - 1).next_power_of_two();
        let mut fa = vec![zero; size];
        fa[..a.len()].copy_from_slice(a);
        let mut fb = vec![zero; size];
        fb[..b.len()].copy_from_slice(b);
        fftutil::fft_in_place(&mut fa);
        fftutil::fft_in_place(&mut fb);
        for (x, y) in fa.iter_mut().zip(&fb) {
            *x *= y;
        }
        fftutil::ifft_in_place(&mut fa);
        fa.truncate(kept);
        fa
    };
    out.resize(out_len, zero);
    out
}
