//! Radial extrapolation at the boundary point `1`.
//!
//! Functions in this laboratory typically behave like
//! `f(r) = L + sum_m c_m (1-r)^{p_m}` as `r -> 1` along the reals, with
//! power-type exponents `p_m > 0` coming from the `(1-z)^alpha` factor and
//! integer exponents from analytic parts. Values are sampled on the geometric
//! ladder `r_j = 1 - 2^{-j}`, on which each power term contracts by the fixed
//! factor `2^{-p}` per step — exactly the situation in which Aitken and
//! Richardson acceleration excel.
//!
//! Two accelerators are provided:
//!
//! * [`radial_limit_at_one`] — iterated Aitken Delta-squared, which needs no
//!   knowledge of the exponents and is the general-purpose default.
//! * [`radial_limit_known_exponents`] — sequential Richardson elimination for
//!   a caller-supplied exponent list; much more accurate when the exponents
//!   are known, as they are for decompositions of `p + (1-z)^alpha h`.

use crate::grid::DiskPoint;
use crate::series::CoeffSeries;
use num_complex::Complex64;

/// Default extrapolation ladder `r_j = 1 - 2^{-j}`, `j = 1..=DEFAULT_LADDER_DEPTH`.
pub const DEFAULT_LADDER_DEPTH: u32 = 12;

/// Default stability tolerance: the extrapolant must be Cauchy at this level
/// across the last acceleration stage.
pub const DEFAULT_STABILITY_TOL: f64 = 1e-4;

/// Result of a radial extrapolation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialLimit {
    /// Extrapolated boundary value.
    pub value: Complex64,
    /// Whether the acceleration settled within the requested tolerance.
    pub stable: bool,
    /// Magnitude of the last correction the accelerator applied.
    pub spread: f64,
}

/// Samples the `order`-th derivative of the series on the radial ladder.
fn ladder_values(series: &CoeffSeries, order: usize, depth: u32) -> Vec<Complex64> {
    let derivative = series.differentiate_n(order);
    (1..=depth)
        .map(|j| {
            let r = 1.0 - (2.0f64).powi(-(j as i32));
            derivative.evaluate(DiskPoint::real(r).expect("ladder radii are interior"))
        })
        .collect()
}

fn finite(v: Complex64) -> bool {
    v.re.is_finite() && v.im.is_finite()
}

/// One Aitken Delta-squared pass over a sequence.
fn aitken_stage(xs: &[Complex64]) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(xs.len().saturating_sub(2));
    for w in xs.windows(3) {
        let (a, b, c) = (w[0], w[1], w[2]);
        let denom = c - 2.0 * b + a;
        let num = (b - a) * (b - a);
        let accel = if denom.norm() > 0.0 { a - num / denom } else { c };
        out.push(if finite(accel) { accel } else { c });
    }
    out
}

/// Extrapolates the `order`-th derivative of the series at `z = 1` along the
/// ladder `r_j = 1 - 2^{-j}` using iterated Aitken acceleration.
///
/// The reported `stable` flag means the last acceleration stage moved the
/// value by at most `tol` (Cauchy criterion); an unstable extrapolation is
/// reported, never turned into an error.
pub fn radial_limit_at_one(series: &CoeffSeries, order: usize, tol: f64) -> RadialLimit {
    let values = ladder_values(series, order, DEFAULT_LADDER_DEPTH);
    if values.iter().any(|&v| !finite(v)) {
        return RadialLimit {
            value: *values.last().expect("ladder is nonempty"),
            stable: false,
            spread: f64::INFINITY,
        };
    }
    let mut prev = *values.last().expect("ladder is nonempty");
    let mut stage = values;
    while stage.len() >= 3 {
        let next = aitken_stage(&stage);
        prev = *stage.last().expect("stage is nonempty");
        stage = next;
    }
    let value = *stage.last().unwrap_or(&prev);
    let spread = (value - prev).norm();
    RadialLimit {
        value,
        stable: spread.is_finite() && spread <= tol,
        spread,
    }
}

/// Extrapolates with explicit knowledge of the error exponents: for each
/// exponent `p` (in the order given) one Richardson elimination
/// `R <- (R[1..] - 2^{-p} R[..n-1]) / (1 - 2^{-p})` removes the `(1-r)^p`
/// error term on the geometric ladder.
///
/// `exponents` should list the leading error powers in increasing order;
/// elimination stops early if the sequence runs out of entries.
pub fn radial_limit_known_exponents(
    series: &CoeffSeries,
    order: usize,
    exponents: &[f64],
    tol: f64,
) -> RadialLimit {
    let values = ladder_values(series, order, DEFAULT_LADDER_DEPTH);
    if values.iter().any(|&v| !finite(v)) {
        return RadialLimit {
            value: *values.last().expect("ladder is nonempty"),
            stable: false,
            spread: f64::INFINITY,
        };
    }
    let mut stage = values;
    let mut prev = *stage.last().expect("ladder is nonempty");
    for &p in exponents {
        if stage.len() < 2 {
            break;
        }
        let q = (2.0f64).powf(-p);
        let next: Vec<Complex64> = stage
            .windows(2)
            .map(|w| (w[1] - q * w[0]) / (1.0 - q))
            .collect();
        prev = *stage.last().expect("stage is nonempty");
        stage = next;
    }
    let value = *stage.last().unwrap_or(&prev);
    let spread = (value - prev).norm();
    RadialLimit {
        value,
        stable: spread.is_finite() && spread <= tol,
        spread,
    }
}

/// Builds the exponent list for functions of the form
/// `poly + (1-z)^alpha h` differentiated `order` times: the fractional powers
/// `alpha - order + m` and the integer powers from the analytic remainder,
/// merged in increasing order (duplicates removed).
pub fn power_exponents(alpha: f64, order: usize, count: usize) -> Vec<f64> {
    let mut exps: Vec<f64> = Vec::new();
    for m in 0..count {
        let p = alpha - order as f64 + m as f64;
        if p > 1e-9 {
            exps.push(p);
        }
    }
    for m in 1..=count {
        exps.push(m as f64);
    }
    exps.sort_by(|a, b| a.partial_cmp(b).expect("exponents are finite"));
    exps.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    exps.truncate(count);
    exps
}
