//! Constructive decompositions of H(b_alpha) elements.
//!
//! For the `(1-z)^{-alpha}` family the space has an explicit structure that
//! depends on where `alpha` falls relative to the half-integers.  With `n`
//! the unique integer satisfying `n - 1/2 < alpha <= n + 1/2`:
//!
//! * `alpha < 1/2` (`n = 0`): every member is `(1-z)^alpha h` with `h` in
//!   the Hardy space — pure coefficient division.
//! * `n - 1/2 < alpha < n + 1/2`, `n >= 1`: members split as
//!   `p + (1-z)^alpha h` with `p` the polynomial carrying the Taylor data
//!   of `f` at `z = 1` up to order `n - 1`.
//! * `alpha = n + 1/2`: the order-`(n-1)` Taylor datum is no longer
//!   available; members split as a closure part `(1-z)^alpha h` plus an
//!   element of the `n`-dimensional space `A_n`, found by least squares,
//!   and no Taylor part is claimed.
//!
//! The polynomial part is extracted from the *coefficient tail* of the
//! divided series: dividing `f` by `(1-z)^alpha` sends any uncancelled
//! polynomial piece to a tail shaped exactly by shifted binomial columns,
//! so a least-squares fit of those columns over the upper half of the
//! window recovers the Taylor coefficients.  An independent
//! radial-extrapolation estimate of the same data is attached as a
//! cross-check.
//!
//! A second constructive route decomposes images of the co-analytic
//! multiplier: for `f = T_conj((1-z)^alpha) g` the solution `g0` of the
//! Toeplitz section system `T_{Q^{alpha-n}} g0 = (-1)^n g` yields
//! `f = (1-z)^alpha S*^n g0 + sum_k <g0, z^k> S*^{n-k} (1-z)^alpha`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::BoundaryGrid;
use crate::limits::{power_exponents, radial_limit_known_exponents};
use crate::projection::{project_minus, project_plus};
use crate::series::{adjoint_apply, binomial_series, CoeffSeries};
use crate::space::{division_diagnostic, membership_test, Verdict};
use crate::toeplitz::q_power_section;

/// Where `alpha` sits relative to the half-integer grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlphaOrder {
    /// The unique integer with `n - 1/2 < alpha <= n + 1/2`.
    pub n: usize,
    /// True exactly when `alpha = n + 1/2`.
    pub half_integer: bool,
}

/// Classifies `alpha` into its structural case.  The boundary value
/// `alpha = n + 1/2` belongs to order `n` (and is flagged), matching the
/// convention that the half-integer space sits at the top of its order.
pub fn alpha_order(alpha: f64) -> Result<AlphaOrder> {
    if !alpha.is_finite() || alpha <= 0.0 {
        return Err(Error::InvalidAlpha(alpha));
    }
    let n = (alpha - 0.5).ceil().max(0.0) as usize;
    let half_integer = alpha - 0.5 == (alpha - 0.5).floor();
    Ok(AlphaOrder { n, half_integer })
}

/// Which structural branch produced a decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecompositionMode {
    /// `alpha < 1/2`: pure division by `(1-z)^alpha`.
    PureDivision,
    /// `n - 1/2 < alpha < n + 1/2`, `n >= 1`: Taylor polynomial plus
    /// division of the remainder.
    TaylorPlusDivision,
    /// `alpha = n + 1/2`: least squares against the `A_n` basis and the
    /// shifted divisor columns; no Taylor part is claimed because the
    /// order-`(n-1)` derivative limit does not exist at the boundary
    /// parameter.
    HalfIntegerLeastSquares,
}

/// Result of [`decompose`]: `f ~ poly_part + (1-z)^alpha ma_factor + an_part`.
#[derive(Debug, Clone)]
pub struct HbDecomposition {
    /// Polynomial part (window of length `n`; zero when none is claimed).
    pub poly_part: CoeffSeries,
    /// The Hardy-space factor `h` with `(1-z)^alpha h` the division part.
    pub ma_factor: CoeffSeries,
    /// Least-squares `A_n` component (zero outside the half-integer case).
    pub an_part: CoeffSeries,
    /// `l2` norm of `poly + (1-z)^alpha ma + an - f` over the window.
    pub residual_norm: f64,
    /// Branch taken.
    pub mode: DecompositionMode,
    /// Largest disagreement, across orders `k < n`, between the fitted
    /// Taylor coefficient `p^(k)(1)/k!` and an independent radial
    /// extrapolation of `f^(k)(1)/k!` (Taylor branch only).
    pub radial_agreement: Option<f64>,
}

/// The mate-multiplier decomposition of `f = T_conj((1-z)^alpha) g`.
#[derive(Debug, Clone)]
pub struct MabarDecomposition {
    /// `h = S*^n g0`: the Hardy factor of the `(1-z)^alpha h` part.
    pub h: CoeffSeries,
    /// `weights[k] = <g0, z^k>` multiplies `S*^{n-k} (1-z)^alpha`,
    /// `k = 0..n-1`.
    pub weights: Vec<Complex64>,
    /// Solution of the section system `T_{Q^{alpha-n}} g0 = (-1)^n g`.
    pub g0: CoeffSeries,
    /// Relative reconstruction residual over the leading 64 coefficients.
    pub residual: f64,
    /// Smallest singular value of the section that was solved.
    pub sigma_min: f64,
}

/// Applies `T_conj((1-z)^alpha)` in coefficient space (a Hankel-type sum
/// with exact binomial weights).
pub fn t_conj_power_apply(alpha: f64, f: &CoeffSeries) -> Result<CoeffSeries> {
    if !alpha.is_finite() || alpha <= 0.0 {
        return Err(Error::InvalidAlpha(alpha));
    }
    let weights = binomial_series(alpha, f.len());
    Ok(adjoint_apply(weights.coeffs(), f))
}

/// The shift-defect basis `S*^k (1-z)^alpha`, `k = 1..n`, each on a window
/// of length `m`.  Together with `M((1-z)^alpha)` these span
/// `M(conj((1-z)^alpha))`; here `n = floor(alpha + 1/2)`, so half-integer
/// parameters round up (the boundary space needs the extra vector).
pub fn sstar_basis(alpha: f64, m: usize) -> Result<Vec<CoeffSeries>> {
    if !alpha.is_finite() || alpha <= 0.0 {
        return Err(Error::InvalidAlpha(alpha));
    }
    let n = (alpha + 0.5).floor() as usize;
    if n == 0 {
        return Err(Error::EmptyShiftBasis(alpha));
    }
    let base = binomial_series(alpha, m + n);
    Ok((1..=n).map(|k| base.shift_star(k).truncate(m)).collect())
}

/// The `A_n` basis at a half-integer `alpha = n + 1/2`, `n >= 1`: for
/// `p = z^k`, `k = 0..n-1`, the vector `z^k P_+(G) + P_+(z^k P_-(G))` with
/// `G = conj((1-z)^alpha) (1-z)^{1/2}` sampled exactly on the grid
/// (`G = m^{alpha + 1/2} e^{-i n (t - pi)/2}` with `m = 2 sin(t/2)`).
pub fn an_basis(alpha: f64, grid: BoundaryGrid, m: usize) -> Result<Vec<CoeffSeries>> {
    let order = alpha_order(alpha)?;
    if !order.half_integer || order.n == 0 {
        return Err(Error::NotHalfInteger(alpha));
    }
    if m == 0 || m > grid.n_points() / 2 {
        return Err(Error::DegreeBoundTooLarge {
            requested: m,
            max: grid.n_points() / 2,
        });
    }
    let n = order.n;
    let g_samples = grid.sample(|t| {
        let chord = 2.0 * (0.5 * t).sin();
        Complex64::from_polar(
            chord.powf(alpha + 0.5),
            -(n as f64) * (t - std::f64::consts::PI) / 2.0,
        )
    });
    let g_plus = project_plus(&g_samples, m)?;
    let g_minus = project_minus(&g_samples);
    let mut basis = Vec::with_capacity(n);
    for k in 0..n {
        // z^k * P_-(G) nodewise, then keep the analytic part.
        let zk_minus = grid
            .sample(|t| Complex64::from_polar(1.0, k as f64 * t))
            .pointwise_mul(&g_minus)?;
        let wrapped = project_plus(&zk_minus, m)?;
        basis.push(g_plus.shift(k).truncate(m).add(&wrapped));
    }
    Ok(basis)
}

/// Window length used to sample the radial extrapolation ladder in the
/// Taylor branch.  The deepest ladder radius is `1 - 2^{-12}`, where the
/// tail a slowly decaying series loses to a short coefficient window is
/// still visible (and Richardson elimination amplifies it), so the
/// cross-check samples `f` on a longer window than the decomposition
/// itself works on.
const RADIAL_SAMPLE_WINDOW: usize = 1 << 16;

/// Decomposes a member of `H(b_alpha)` according to its structural case.
///
/// `f_at(m)` materializes the candidate's coefficient window — it may be
/// called with lengths larger than the working window (the radial
/// cross-check samples a longer one); `grid` is used only at half-integer
/// `alpha` (for the `A_n` basis); `m` is the working window length.
/// Candidates failing the cross-resolution membership probe are rejected,
/// as are divisions whose truncated quotients grow under refinement.
pub fn decompose(
    alpha: f64,
    f_at: impl Fn(usize) -> Result<CoeffSeries>,
    grid: BoundaryGrid,
    m: usize,
) -> Result<HbDecomposition> {
    let order = alpha_order(alpha)?;
    if m < 32 {
        return Err(Error::InvalidInput("decomposition window must be at least 32"));
    }
    let ladder = [m / 4, m / 2, m];
    let membership = membership_test(alpha, &f_at, &ladder)?;
    match membership.verdict {
        Verdict::Member => {}
        Verdict::NonMember => {
            return Err(Error::NotMember {
                alpha,
                verdict: "non-member",
            })
        }
        Verdict::Inconclusive => {
            return Err(Error::NotMember {
                alpha,
                verdict: "inconclusive",
            })
        }
    }
    let f = f_at(m)?.truncate(m);
    if f.h2_norm_sq() == 0.0 {
        // the zero function decomposes trivially in every branch; the
        // division diagnostic has no data to fit on it
        return Ok(HbDecomposition {
            poly_part: CoeffSeries::zeros(1),
            ma_factor: CoeffSeries::zeros(m),
            an_part: CoeffSeries::zeros(1),
            residual_norm: 0.0,
            mode: if order.half_integer {
                DecompositionMode::HalfIntegerLeastSquares
            } else if order.n == 0 {
                DecompositionMode::PureDivision
            } else {
                DecompositionMode::TaylorPlusDivision
            },
            radial_agreement: None,
        });
    }
    if order.half_integer {
        return half_integer_least_squares(alpha, order.n, &f, grid, m);
    }
    if order.n == 0 {
        let diag = division_diagnostic(alpha, &f_at, &ladder)?;
        if diag.divergent {
            return Err(Error::DivisionUnstable {
                alpha,
                exponent: diag.energy_growth_exponent,
            });
        }
        let ma = f.cauchy_product(&binomial_series(-alpha, m), m);
        let recon = binomial_series(alpha, m).cauchy_product(&ma, m);
        return Ok(HbDecomposition {
            poly_part: CoeffSeries::zeros(1),
            ma_factor: ma,
            an_part: CoeffSeries::zeros(1),
            residual_norm: recon.sub(&f).h2_norm(),
            mode: DecompositionMode::PureDivision,
            radial_agreement: None,
        });
    }
    let radial_len = RADIAL_SAMPLE_WINDOW.max(m);
    let f_radial = f_at(radial_len)?.truncate(radial_len);
    taylor_plus_division(alpha, order.n, &f, &f_radial, m)
}

/// Tail-fit extraction of the Taylor polynomial, then division of the
/// remainder.
fn taylor_plus_division(
    alpha: f64,
    n: usize,
    f: &CoeffSeries,
    f_radial: &CoeffSeries,
    m: usize,
) -> Result<HbDecomposition> {
    let divisor_inv = binomial_series(-alpha, m);
    let quotient = f.cauchy_product(&divisor_inv, m);
    // Fit shifted binomial columns on the upper half of the window: the
    // quotient of z^k against (1-z)^alpha is binom(-alpha) shifted by k,
    // and any Hardy-space remainder contributes only a decaying tail there.
    let lo = m / 2;
    let rows = m - lo;
    let design = DMatrix::<Complex64>::from_fn(rows, n, |r, k| {
        let j = lo + r;
        if j >= k {
            divisor_inv.coeff(j - k)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let rhs = DVector::<Complex64>::from_fn(rows, |r, _| quotient.coeff(lo + r));
    let svd = design.svd(true, true);
    let sol = svd
        .solve(&rhs, 1e-13)
        .map_err(|_| Error::NonFinite("tail-fit least squares"))?;
    let poly_coeffs: Vec<Complex64> = sol.iter().copied().collect();
    let poly = CoeffSeries::new(poly_coeffs)?;
    let remainder = f.sub(&poly).truncate(m);
    let diag = division_diagnostic(alpha, |mm| Ok(remainder.truncate(mm)), &[m / 4, m / 2, m])?;
    if diag.divergent {
        return Err(Error::DivisionUnstable {
            alpha,
            exponent: diag.energy_growth_exponent,
        });
    }
    let ma = remainder.cauchy_product(&divisor_inv, m);
    let recon = binomial_series(alpha, m)
        .cauchy_product(&ma, m)
        .add(&poly.truncate(m));
    let residual_norm = recon.sub(f).h2_norm();
    // Independent cross-check: Taylor data of f at z = 1 by Richardson
    // extrapolation with the known fractional error exponents.  Both sides
    // are expressed as coefficients of (z-1)^k, i.e. f^(k)(1)/k!.
    let mut radial_agreement: f64 = 0.0;
    let mut factorial = 1.0;
    for k in 0..n {
        if k > 0 {
            factorial *= k as f64;
        }
        let exps = power_exponents(alpha, k, 8);
        let lim = radial_limit_known_exponents(f_radial, k, &exps, 1e-6);
        let fitted = taylor_at_one(&poly, k);
        radial_agreement = radial_agreement.max((lim.value / factorial - fitted).norm());
    }
    Ok(HbDecomposition {
        poly_part: poly,
        ma_factor: ma,
        an_part: CoeffSeries::zeros(1),
        residual_norm,
        mode: DecompositionMode::TaylorPlusDivision,
        radial_agreement: Some(radial_agreement),
    })
}

/// `k`-th Taylor coefficient of a polynomial at `z = 1`: `p^(k)(1) / k!`.
fn taylor_at_one(p: &CoeffSeries, k: usize) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (j, &c) in p.coeffs().iter().enumerate().skip(k) {
        acc += c * binomial_f64(j, k);
    }
    acc
}

/// Binomial coefficient `C(n, k)` as a float (small arguments only).
fn binomial_f64(n: usize, k: usize) -> f64 {
    let mut v = 1.0;
    for i in 0..k {
        v = v * (n - i) as f64 / (i + 1) as f64;
    }
    v
}

/// Least-squares split at `alpha = n + 1/2`: columns are the `A_n` basis
/// (when `n >= 1`) followed by the shifted divisor columns
/// `z^j (1-z)^alpha`, `j < m/2`.
fn half_integer_least_squares(
    alpha: f64,
    n: usize,
    f: &CoeffSeries,
    grid: BoundaryGrid,
    m: usize,
) -> Result<HbDecomposition> {
    let k_cols = m / 2;
    let an_vectors = if n >= 1 {
        an_basis(alpha, grid, m)?
    } else {
        Vec::new()
    };
    let divisor = binomial_series(alpha, m);
    let cols = an_vectors.len() + k_cols;
    let design = DMatrix::<Complex64>::from_fn(m, cols, |r, c| {
        if c < an_vectors.len() {
            an_vectors[c].coeff(r)
        } else {
            let j = c - an_vectors.len();
            if r >= j {
                divisor.coeff(r - j)
            } else {
                Complex64::new(0.0, 0.0)
            }
        }
    });
    let rhs = DVector::<Complex64>::from_fn(m, |r, _| f.coeff(r));
    let svd = design.svd(true, true);
    let sol = svd
        .solve(&rhs, 1e-12)
        .map_err(|_| Error::NonFinite("half-integer least squares"))?;
    let an_weights: Vec<Complex64> = sol.iter().take(an_vectors.len()).copied().collect();
    let h_coeffs: Vec<Complex64> = sol.iter().skip(an_vectors.len()).copied().collect();
    let ma = CoeffSeries::new(if h_coeffs.is_empty() {
        vec![Complex64::new(0.0, 0.0)]
    } else {
        h_coeffs
    })?;
    let mut an_part = CoeffSeries::zeros(m.max(1));
    for (w, v) in an_weights.iter().zip(&an_vectors) {
        an_part = an_part.add(&v.scale(*w));
    }
    let recon = divisor.cauchy_product(&ma, m).add(&an_part.truncate(m));
    let residual_norm = recon.sub(f).h2_norm();
    Ok(HbDecomposition {
        poly_part: CoeffSeries::zeros(1),
        ma_factor: ma,
        an_part,
        residual_norm,
        mode: DecompositionMode::HalfIntegerLeastSquares,
        radial_agreement: None,
    })
}

/// Decomposes `f = T_conj((1-z)^alpha) g` through the Toeplitz section
/// system: solves `T_{Q^{alpha-n}} g0 = (-1)^n g` at dimension
/// `section_dim`, then reads off `h = S*^n g0` and the shift-basis weights.
///
/// Requires `n - 1/2 < alpha < n + 1/2` with `n >= 1`; at the half-integer
/// boundary the section has no stable inverse.  Sections with smallest
/// singular value below `1e-10` are rejected, not regularized.
pub fn decompose_mabar(
    alpha: f64,
    g: &CoeffSeries,
    section_dim: usize,
) -> Result<MabarDecomposition> {
    let order = alpha_order(alpha)?;
    if order.n == 0 {
        return Err(Error::EmptyShiftBasis(alpha));
    }
    if order.half_integer {
        return Err(Error::InvalidInput(
            "mate decomposition needs alpha strictly between half-integers",
        ));
    }
    let n = order.n;
    let beta = alpha - n as f64;
    let section = q_power_section(beta, section_dim)?;
    let solver = section.solver(1e-10)?;
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let g_padded = g.truncate(section_dim);
    let rhs = g_padded.scale(Complex64::new(sign, 0.0));
    let g0 = solver.solve(&rhs)?;
    let h = g0.shift_star(n);
    let weights: Vec<Complex64> = (0..n).map(|k| g0.coeff(k)).collect();
    // Residual over the leading window: compare f = T_conj((1-z)^alpha) g
    // against (1-z)^alpha h + sum_k weights[k] S*^{n-k} (1-z)^alpha.
    let f = t_conj_power_apply(alpha, &g_padded)?;
    let window = 64.min(section_dim);
    let divisor = binomial_series(alpha, section_dim + n);
    let mut recon = divisor.truncate(section_dim).cauchy_product(&h, section_dim);
    for (k, w) in weights.iter().enumerate() {
        recon = recon.add(&divisor.shift_star(n - k).truncate(section_dim).scale(*w));
    }
    let diff = recon.sub(&f).truncate(window).h2_norm();
    let denom = f.truncate(window).h2_norm();
    let residual = if denom > 0.0 { diff / denom } else { diff };
    Ok(MabarDecomposition {
        h,
        weights,
        g0,
        residual,
        sigma_min: solver.sigma_min(),
    })
}

/// Exact Wiener-Hopf inverse for `T_{Q^beta}`, `|beta| < 1/2`, used as a
/// test oracle.  On the circle `Q^beta = conj((1-z)^{-beta}) (1-z)^beta`
/// (the chord moduli cancel and the half-angle phases add), and with the
/// co-analytic factor on the left this factorizes the operator, so the
/// inverse applies the reciprocal factors in the opposite roles:
/// `T_{Q^beta}^{-1} = T_{(1-z)^{-beta}} T_conj((1-z)^beta)`.
#[cfg(test)]
fn wiener_hopf_solve(beta: f64, v: &CoeffSeries) -> CoeffSeries {
    let len = v.len();
    let co = adjoint_apply(binomial_series(beta, len).coeffs(), v);
    co.cauchy_product(&binomial_series(-beta, len), len)
}
