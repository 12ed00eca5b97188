//! Pythagorean pairs `(b, a)`: two functions in the unit ball of `H^infty`
//! with `|a|^2 + |b|^2 = 1` a.e. on the circle, `a` outer with `a(0) > 0`.
//!
//! The central family is parameterized by `alpha > 0` through the quotient
//! `b_alpha / a_alpha = (1 - z)^{-alpha}`, which pins the boundary moduli to
//!
//! ```text
//! |a_alpha|^2 = m^{2 alpha} / (1 + m^{2 alpha}),   m(t) = |1 - e^{it}| = 2 sin(t/2),
//! |b_alpha|^2 = 1 / (1 + m^{2 alpha}).
//! ```
//!
//! Both members are outer, so the whole pair is reconstructed from these
//! moduli. The constructors below evaluate the moduli in log form
//! (`log |a| = alpha log m - log1p(m^{2 alpha}) / 2`, etc.), feed them through
//! the outer-function machinery, and keep the boundary moduli *exact*, which
//! makes the Pythagorean identity hold at the nodes to near machine
//! precision by construction.

use crate::error::{Error, Result};
use crate::grid::{BoundaryGrid, BoundarySamples, DiskPoint};
use crate::limits::{radial_limit_at_one, RadialLimit, DEFAULT_STABILITY_TOL};
use crate::outer::{herglotz_exp_at, outer_trace_from_log_modulus};
use crate::projection::project_plus;
use crate::series::{binomial_series, CoeffSeries};
use num_complex::Complex64;

/// Relative slack used when checking the two-sided modulus bounds.
const SANDWICH_REL_SLACK: f64 = 1e-9;

/// Taylor-coefficient source for the quotient `phi = b / a`, used by the
/// adjoint-multiplier machinery.
///
/// For the `alpha` family the coefficients are the exact binomial expansion
/// of `(1 - z)^{-alpha}` at any requested length; generic pairs carry a fixed
/// projected coefficient window instead.
#[derive(Debug, Clone, PartialEq)]
pub enum Multiplier {
    /// `phi = (1 - z)^{-alpha}`: coefficients generated exactly on demand.
    AlphaPower(f64),
    /// Arbitrary analytic quotient with a stored coefficient window.
    Series(CoeffSeries),
}

impl Multiplier {
    /// The first `m` Taylor coefficients of the quotient.
    pub fn coefficients(&self, m: usize) -> CoeffSeries {
        match self {
            Multiplier::AlphaPower(alpha) => binomial_series(-alpha, m),
            Multiplier::Series(s) => s.truncate(m),
        }
    }
}

/// Diagnostics serialized with a pair: the nodewise Pythagorean residual,
/// the minimum of `|b|` over the grid, and the radially extrapolated value
/// of `b` at the boundary point `1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairDiagnostics {
    /// `max_j | |a(e^{it_j})|^2 + |b(e^{it_j})|^2 - 1 |`.
    pub pyth_residual: f64,
    /// `min_j |b(e^{it_j})|`.
    pub corona_min: f64,
    /// Radial extrapolation of `b` at `1` (the family satisfies `b(1) = 1`).
    pub b_at_one: Complex64,
    /// Stability flag of the extrapolation.
    pub b_at_one_stable: bool,
}

/// Two-sided bound report for `|a_alpha(z)|` at an interior point:
/// `lower = (1+4^alpha)^{-1/2} |1-z|^alpha`, `upper = |1-z|^alpha`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SandwichReport {
    pub lower: f64,
    pub value: f64,
    pub upper: f64,
    /// `lower <= value <= upper` within relative slack `1e-9`.
    pub within_bounds: bool,
}

/// A Pythagorean pair with boundary traces, projected Taylor series, and the
/// quotient data needed for adjoint-multiplier work.
#[derive(Debug, Clone)]
pub struct PythagoreanPair {
    alpha: Option<f64>,
    grid: BoundaryGrid,
    degree_bound: usize,
    a_boundary: BoundarySamples,
    b_boundary: BoundarySamples,
    phi_boundary: BoundarySamples,
    a_series: CoeffSeries,
    b_series: CoeffSeries,
    multiplier: Multiplier,
    /// Boundary log-modulus of `a` with the singular `alpha * log m` part
    /// removed for family pairs (kept raw for generic pairs); drives the
    /// factored interior evaluator [`PythagoreanPair::a_at`].
    smooth_log_a: Vec<f64>,
    /// Boundary log-modulus of `b` (smooth for family pairs).
    log_b_data: Vec<f64>,
}

impl PythagoreanPair {
    /// Builds the `alpha`-family pair on the given grid, projecting Taylor
    /// series with `degree_bound` coefficients (`<= n_points / 2`).
    pub fn pair_alpha(alpha: f64, grid: BoundaryGrid, degree_bound: usize) -> Result<Self> {
        if !alpha.is_finite() || alpha <= 0.0 {
            return Err(Error::InvalidAlpha(alpha));
        }
        let p = grid.n_points();
        let mut log_a = Vec::with_capacity(p);
        let mut log_b = Vec::with_capacity(p);
        for j in 0..p {
            let m = grid.chord(j);
            let x = m.powf(2.0 * alpha);
            let half_log1p = 0.5 * x.ln_1p();
            log_a.push(alpha * m.ln() - half_log1p);
            log_b.push(-half_log1p);
        }
        Self::from_log_moduli(Some(alpha), grid, degree_bound, &log_a, &log_b, Some(Multiplier::AlphaPower(alpha)))
    }

    /// Builds the unique pair with quotient `b / a = phi` for an *outer*
    /// quotient given by boundary modulus samples plus a Taylor-coefficient
    /// window.
    ///
    /// The pair is reconstructed purely from the modulus:
    /// `|a|^2 = 1 / (1 + |phi|^2)`, `|b|^2 = |phi|^2 / (1 + |phi|^2)`, both
    /// members outer, and then `b / a` automatically agrees with the outer
    /// function of modulus `|phi|` normalized positive at the origin. Inner
    /// factors in `phi` are out of scope (the constructed `b` is outer by
    /// design); the coefficient window is kept for adjoint-multiplier use.
    pub fn from_phi(
        phi_modulus: &BoundarySamples,
        phi_coeffs: CoeffSeries,
        degree_bound: usize,
    ) -> Result<Self> {
        let grid = phi_modulus.grid();
        if phi_coeffs.is_empty() {
            return Err(Error::ZeroFunction);
        }
        let mut log_a = Vec::with_capacity(grid.n_points());
        let mut log_b = Vec::with_capacity(grid.n_points());
        let mut all_zero = true;
        for (index, v) in phi_modulus.values().iter().enumerate() {
            let m = v.re;
            if v.im != 0.0 || !m.is_finite() || m < 0.0 {
                return Err(Error::NonpositiveModulus { index, value: m });
            }
            if m > 0.0 {
                all_zero = false;
            }
            let half_log1p = 0.5 * (m * m).ln_1p();
            log_a.push(-half_log1p);
            // log |b| = log m - log1p(m^2)/2; a zero modulus node sends this
            // to -inf, which the outer constructor rejects as non-integrable.
            log_b.push(m.ln() - half_log1p);
        }
        if all_zero {
            return Err(Error::ZeroFunction);
        }
        if log_b.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonIntegrableLogModulus);
        }
        Self::from_log_moduli(None, grid, degree_bound, &log_a, &log_b, Some(Multiplier::Series(phi_coeffs)))
    }

    /// Builds the pair whose first member is the mate of a given outer
    /// function `a`, supplied through strictly positive boundary modulus
    /// samples with `|a| <= 1`.
    ///
    /// The mate `b` is the outer function with `|b|^2 = 1 - |a|^2` and
    /// `b(0) > 0` (outer functions are unique up to a unimodular constant;
    /// fixing the sign at the origin makes results deterministic).
    pub fn mate_of_outer(a_modulus: &BoundarySamples, degree_bound: usize) -> Result<Self> {
        let grid = a_modulus.grid();
        let mut log_a = Vec::with_capacity(grid.n_points());
        let mut log_b = Vec::with_capacity(grid.n_points());
        for (index, v) in a_modulus.values().iter().enumerate() {
            let m = v.re;
            if v.im != 0.0 || !m.is_finite() || m <= 0.0 {
                return Err(Error::NonpositiveModulus { index, value: m });
            }
            if m > 1.0 {
                return Err(Error::ModulusExceedsOne { index, value: m });
            }
            log_a.push(m.ln());
            // log |b| = log(1 - m^2) / 2; modulus 1 sends this to -inf and is
            // rejected below as non-log-integrable data.
            log_b.push(0.5 * (1.0 - m * m).ln());
        }
        if log_b.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonIntegrableLogModulus);
        }
        // The quotient's Taylor window is only available by projection here;
        // `from_log_moduli` projects it from the boundary quotient when no
        // explicit multiplier is supplied.
        Self::from_log_moduli(None, grid, degree_bound, &log_a, &log_b, None)
    }

    fn from_log_moduli(
        alpha: Option<f64>,
        grid: BoundaryGrid,
        degree_bound: usize,
        log_a: &[f64],
        log_b: &[f64],
        multiplier: Option<Multiplier>,
    ) -> Result<Self> {
        if degree_bound == 0 || degree_bound > grid.n_points() / 2 {
            return Err(Error::DegreeBoundTooLarge {
                requested: degree_bound,
                max: grid.n_points() / 2,
            });
        }
        let a_boundary = outer_trace_from_log_modulus(grid, log_a)?;
        let b_boundary = outer_trace_from_log_modulus(grid, log_b)?;
        let phi_boundary = b_boundary.pointwise_div(&a_boundary)?;
        let a_series = project_plus(&a_boundary, degree_bound)?;
        let b_series = project_plus(&b_boundary, degree_bound)?;
        let multiplier = match multiplier {
            Some(m) => m,
            None => Multiplier::Series(project_plus(&phi_boundary, degree_bound)?),
        };
        // Interior evaluation splits off the chord singularity for family
        // pairs: a = (1-z)^alpha * exp(Herglotz of the smooth remainder).
        let smooth_log_a = match alpha {
            Some(al) => log_a
                .iter()
                .enumerate()
                .map(|(j, &v)| v - al * grid.chord(j).ln())
                .collect(),
            None => log_a.to_vec(),
        };
        Ok(Self {
            alpha,
            grid,
            degree_bound,
            a_boundary,
            b_boundary,
            phi_boundary,
            a_series,
            b_series,
            multiplier,
            smooth_log_a,
            log_b_data: log_b.to_vec(),
        })
    }

    /// Family parameter, when the pair comes from the `(1-z)^{-alpha}` family.
    pub fn alpha(&self) -> Option<f64> {
        self.alpha
    }

    /// Grid carrying the boundary data.
    pub fn grid(&self) -> BoundaryGrid {
        self.grid
    }

    /// Length of the projected Taylor windows.
    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    /// Boundary trace of `a`.
    pub fn a_boundary(&self) -> &BoundarySamples {
        &self.a_boundary
    }

    /// Boundary trace of `b`.
    pub fn b_boundary(&self) -> &BoundarySamples {
        &self.b_boundary
    }

    /// Boundary trace of the quotient `phi = b / a`.
    pub fn phi_boundary(&self) -> &BoundarySamples {
        &self.phi_boundary
    }

    /// Projected Taylor series of `a`.
    pub fn a_series(&self) -> &CoeffSeries {
        &self.a_series
    }

    /// Projected Taylor series of `b`.
    pub fn b_series(&self) -> &CoeffSeries {
        &self.b_series
    }

    /// Taylor-coefficient source for the quotient.
    pub fn multiplier(&self) -> &Multiplier {
        &self.multiplier
    }

    /// Interior value of `a` by the factored route: the chord power
    /// `(1-z)^alpha` in closed form (principal branch) times `exp` of the
    /// Herglotz quadrature of the smooth log-modulus remainder.
    ///
    /// For family pairs this stays accurate arbitrarily close to the
    /// boundary, where the truncated Taylor series degrades; generic pairs
    /// fall back to quadrature of the raw log-modulus.
    pub fn a_at(&self, z: DiskPoint) -> Complex64 {
        let smooth = herglotz_exp_at(self.grid, &self.smooth_log_a, z)
            .expect("log-modulus data validated at construction");
        match self.alpha {
            Some(alpha) => (Complex64::new(1.0, 0.0) - z.z()).powf(alpha) * smooth,
            None => smooth,
        }
    }

    /// Interior value of `b` by Herglotz quadrature of its log-modulus
    /// (smooth data for family pairs, so near machine precision).
    pub fn b_at(&self, z: DiskPoint) -> Complex64 {
        herglotz_exp_at(self.grid, &self.log_b_data, z)
            .expect("log-modulus data validated at construction")
    }

    /// Largest nodewise deviation of `|a|^2 + |b|^2` from `1`.
    pub fn pyth_residual(&self) -> f64 {
        self.a_boundary
            .values()
            .iter()
            .zip(self.b_boundary.values())
            .map(|(a, b)| (a.norm_sqr() + b.norm_sqr() - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// Smallest `|b|` over the grid nodes.
    pub fn corona_min(&self) -> f64 {
        self.b_boundary
            .values()
            .iter()
            .map(|v| v.norm())
            .fold(f64::INFINITY, f64::min)
    }

    /// The family lower bound `(1 + 4^alpha)^{-1/2}` for `|b_alpha|`.
    pub fn corona_bound(alpha: f64) -> f64 {
        (1.0 + (4.0f64).powf(alpha)).powf(-0.5)
    }

    /// Largest nodewise deviation of `phi * a` from `b`.
    pub fn phi_consistency_residual(&self) -> f64 {
        self.phi_boundary
            .values()
            .iter()
            .zip(self.a_boundary.values())
            .zip(self.b_boundary.values())
            .map(|((p, a), b)| (p * a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Radial extrapolation of `b` at the boundary point `1`.
    pub fn b_at_one(&self) -> RadialLimit {
        radial_limit_at_one(&self.b_series, 0, DEFAULT_STABILITY_TOL)
    }

    /// Bundles the standard diagnostics.
    pub fn diagnostics(&self) -> PairDiagnostics {
        let lim = self.b_at_one();
        PairDiagnostics {
            pyth_residual: self.pyth_residual(),
            corona_min: self.corona_min(),
            b_at_one: lim.value,
            b_at_one_stable: lim.stable,
        }
    }

    /// Checks the two-sided bound
    /// `(1+4^alpha)^{-1/2} |1-z|^alpha <= |a_alpha(z)| <= |1-z|^alpha`
    /// at an interior point (family pairs only).
    pub fn sandwich_check(&self, z: DiskPoint) -> Result<SandwichReport> {
        let alpha = self
            .alpha
            .ok_or(Error::InvalidInput("modulus bounds apply to alpha-family pairs only"))?;
        let chord = (Complex64::new(1.0, 0.0) - z.z()).norm();
        let upper = chord.powf(alpha);
        let lower = Self::corona_bound(alpha) * upper;
        let value = self.a_at(z).norm();
        let within_bounds =
            value >= lower * (1.0 - SANDWICH_REL_SLACK) && value <= upper * (1.0 + SANDWICH_REL_SLACK);
        Ok(SandwichReport {
            lower,
            value,
            upper,
            within_bounds,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(p: usize) -> BoundaryGrid {
        BoundaryGrid::new(p).unwrap()
    }

    #[test]
    fn alpha_must_be_positive() {
        assert!(matches!(
            PythagoreanPair::pair_alpha(0.0, grid(64), 16),
            Err(Error::InvalidAlpha(_))
        ));
        assert!(matches!(
            PythagoreanPair::pair_alpha(-1.0, grid(64), 16),
            Err(Error::InvalidAlpha(_))
        ));
    }

    #[test]
    fn pythagorean_identity_near_machine_precision() {
        for &alpha in &[0.25, 1.0, 2.5] {
            let pair = PythagoreanPair::pair_alpha(alpha, grid(1024), 256).unwrap();
            assert!(
                pair.pyth_residual() < 1e-12,
                "alpha={alpha}: residual {}",
                pair.pyth_residual()
            );
        }
    }

    #[test]
    fn origin_values_match_and_are_positive() {
        // phi(0) = 1 forces a(0) = b(0); both real positive. The factored
        // evaluator reproduces the equality to machine precision.
        let pair = PythagoreanPair::pair_alpha(1.7, grid(2048), 512).unwrap();
        let z0 = DiskPoint::real(0.0).unwrap();
        let a0 = pair.a_at(z0);
        let b0 = pair.b_at(z0);
        assert!(a0.re > 0.0 && a0.im.abs() < 1e-12);
        assert!((a0 - b0).norm() < 1e-13);
        // The projected-series route carries the known discrete-mean bias of
        // the chord logarithm, exactly alpha * ln(2) / P relative (the
        // midpoint product formula gives mean log(2 sin(t/2)) = ln(2)/P
        // instead of the continuum value 0). Check magnitude and sign.
        let (alpha, p) = (1.7, 2048.0);
        let a0s = pair.a_series().evaluate(z0);
        let b0s = pair.b_series().evaluate(z0);
        let predicted = alpha * (2.0f64).ln() / p * b0s.re;
        assert!(a0s.re > 0.0 && a0s.im.abs() < 1e-12);
        assert!(((a0s - b0s).norm() - predicted).abs() < 0.05 * predicted);
    }

    #[test]
    fn golden_ratio_value_at_origin() {
        // b_1(0) = ((3 + sqrt 5)/2)^{-1/2}: with phi = (1-z)^{-1},
        // 1 + |1-e^{it}|^2 = 3 - 2 cos t and the mean of log(3 - 2 cos t)
        // is log((3 + sqrt 5)/2).
        let pair = PythagoreanPair::pair_alpha(1.0, grid(4096), 1024).unwrap();
        let b0 = pair.b_series().evaluate(DiskPoint::real(0.0).unwrap());
        let expected = ((3.0 + 5.0f64.sqrt()) / 2.0).powf(-0.5);
        assert!(
            (b0.re - expected).abs() < 1e-10,
            "b_1(0) = {} vs {expected}",
            b0.re
        );
    }

    #[test]
    fn corona_floor_holds_on_grid() {
        for &alpha in &[0.5, 1.0, 2.5] {
            let pair = PythagoreanPair::pair_alpha(alpha, grid(2048), 512).unwrap();
            let bound = PythagoreanPair::corona_bound(alpha);
            assert!(
                pair.corona_min() >= bound - 1e-9,
                "alpha={alpha}: {} < {bound}",
                pair.corona_min()
            );
        }
        // alpha = 1 bound is 1/sqrt(5)
        assert!((PythagoreanPair::corona_bound(1.0) - 1.0 / 5.0f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn quotient_times_a_is_b_nodewise() {
        let pair = PythagoreanPair::pair_alpha(0.75, grid(1024), 256).unwrap();
        assert!(pair.phi_consistency_residual() < 1e-10);
    }

    #[test]
    fn b_is_real_positive_on_the_radius() {
        let pair = PythagoreanPair::pair_alpha(1.5, grid(4096), 1024).unwrap();
        for k in 1..10 {
            let r = k as f64 / 10.0;
            let v = pair.b_series().evaluate(DiskPoint::real(r).unwrap());
            assert!(v.im.abs() < 1e-8, "arg b({r}) = {}", v.im);
            assert!(v.re > 0.0);
        }
    }

    #[test]
    fn generic_quotient_pair_from_constant() {
        // phi = 1 gives a = b = 1/sqrt(2)
        let g = grid(256);
        let modulus = g.sample_real(|_| 1.0);
        let coeffs = CoeffSeries::constant(Complex64::new(1.0, 0.0), 8);
        let pair = PythagoreanPair::from_phi(&modulus, coeffs, 32).unwrap();
        let v = pair.a_series().evaluate(DiskPoint::real(0.3).unwrap());
        let inv_sqrt2 = 0.5f64.sqrt();
        assert!((v - Complex64::new(inv_sqrt2, 0.0)).norm() < 1e-12);
        let vb = pair.b_series().evaluate(DiskPoint::real(0.3).unwrap());
        assert!((vb - Complex64::new(inv_sqrt2, 0.0)).norm() < 1e-12);
        assert!(pair.pyth_residual() < 1e-13);
    }

    #[test]
    fn generic_quotient_matches_family_construction() {
        // phi = (1-z)^{-0.6} fed through the generic constructor agrees with
        // the family constructor at interior points.
        let alpha = 0.6;
        let g = grid(2048);
        let family = PythagoreanPair::pair_alpha(alpha, g, 512).unwrap();
        let modulus = g.sample_real(|t| (2.0 * (0.5 * t).sin()).powf(-alpha));
        let coeffs = binomial_series(-alpha, 512);
        let generic = PythagoreanPair::from_phi(&modulus, coeffs, 512).unwrap();
        for &(re, im) in &[(0.0, 0.0), (0.5, 0.1), (-0.4, 0.3), (0.2, -0.7)] {
            let z = DiskPoint::new(Complex64::new(re, im)).unwrap();
            let da = (family.a_series().evaluate(z) - generic.a_series().evaluate(z)).norm();
            let db = (family.b_series().evaluate(z) - generic.b_series().evaluate(z)).norm();
            assert!(da < 1e-8 && db < 1e-8, "deviation a {da} b {db}");
        }
    }

    #[test]
    fn zero_quotient_rejected() {
        let g = grid(64);
        let modulus = g.sample_real(|_| 0.0);
        let coeffs = CoeffSeries::zeros(4);
        assert!(matches!(
            PythagoreanPair::from_phi(&modulus, coeffs, 16),
            Err(Error::ZeroFunction)
        ));
    }

    #[test]
    fn mate_of_constant_outer() {
        let g = grid(128);
        let inv_sqrt2 = 0.5f64.sqrt();
        let modulus = g.sample_real(|_| inv_sqrt2);
        let pair = PythagoreanPair::mate_of_outer(&modulus, 32).unwrap();
        let vb = pair.b_series().evaluate(DiskPoint::real(0.0).unwrap());
        assert!((vb - Complex64::new(inv_sqrt2, 0.0)).norm() < 1e-12);
        assert!(pair.pyth_residual() < 1e-13);
    }

    #[test]
    fn mate_rejects_bad_moduli() {
        let g = grid(8);
        let too_big = BoundarySamples::new(
            g,
            vec![Complex64::new(1.2, 0.0); 8],
        )
        .unwrap();
        assert!(matches!(
            PythagoreanPair::mate_of_outer(&too_big, 4),
            Err(Error::ModulusExceedsOne { .. })
        ));
        let with_one = BoundarySamples::new(
            g,
            vec![Complex64::new(1.0, 0.0); 8],
        )
        .unwrap();
        assert!(matches!(
            PythagoreanPair::mate_of_outer(&with_one, 4),
            Err(Error::NonIntegrableLogModulus)
        ));
    }

    #[test]
    fn tilde_family_mate_keeps_modulus_sum_bounded_below() {
        // a = ((1-z)/2)^alpha at alpha = 1: |b|^2 = (1 + cos t)/2 on the
        // boundary, and |a| + |b| stays bounded away from zero.
        let g = grid(1024);
        let alpha = 1.0;
        let modulus = g.sample_real(|t| ((0.5 * t).sin()).powf(alpha));
        let pair = PythagoreanPair::mate_of_outer(&modulus, 256).unwrap();
        for (vb, t) in pair.b_boundary().values().iter().zip(g.nodes()) {
            let expected = (0.5 * (1.0 + t.cos())).sqrt();
            assert!((vb.norm() - expected).abs() < 1e-12);
        }
        let floor = pair
            .a_boundary()
            .values()
            .iter()
            .zip(pair.b_boundary().values())
            .map(|(a, b)| a.norm() + b.norm())
            .fold(f64::INFINITY, f64::min);
        assert!(floor > 0.7, "modulus sum floor {floor}");
        // and on a radial mesh inside the disk
        let radial_floor = (0..20)
            .map(|k| {
                let z = DiskPoint::real(-0.95 + 0.1 * k as f64).unwrap();
                pair.a_series().evaluate(z).norm() + pair.b_series().evaluate(z).norm()
            })
            .fold(f64::INFINITY, f64::min);
        assert!(radial_floor > 0.5, "radial modulus sum floor {radial_floor}");
    }

    #[test]
    fn sandwich_bounds_hold_inside_disk() {
        let pair = PythagoreanPair::pair_alpha(0.5, grid(4096), 1024).unwrap();
        for &(re, im) in &[(0.0, 0.0), (0.99, 0.0), (-0.9, 0.3), (0.1, -0.8)] {
            let z = DiskPoint::new(Complex64::new(re, im)).unwrap();
            let rep = pair.sandwich_check(z).unwrap();
            assert!(rep.within_bounds, "violated at {re}+{im}i: {rep:?}");
            assert!(rep.lower <= rep.upper);
        }
        // at z = 0: 1/sqrt(5) <= a_1(0) <= 1
        let pair1 = PythagoreanPair::pair_alpha(1.0, grid(2048), 512).unwrap();
        let rep = pair1.sandwich_check(DiskPoint::real(0.0).unwrap()).unwrap();
        assert!(rep.lower <= rep.value && rep.value <= rep.upper);
        assert!((rep.lower - 1.0 / 5.0f64.sqrt()).abs() < 1e-12);
        assert!((rep.upper - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sandwich_requires_family_pair() {
        let g = grid(64);
        let modulus = g.sample_real(|_| 0.5);
        let pair = PythagoreanPair::mate_of_outer(&modulus, 16).unwrap();
        assert!(pair.sandwich_check(DiskPoint::real(0.0).unwrap()).is_err());
    }

    #[test]
    fn b_at_one_extrapolates_to_one() {
        let pair = PythagoreanPair::pair_alpha(1.0, grid(8192), 2048).unwrap();
        let lim = pair.b_at_one();
        assert!(lim.stable, "spread {}", lim.spread);
        assert!(
            (lim.value - Complex64::new(1.0, 0.0)).norm() < 1e-6,
            "b(1) = {}",
            lim.value
        );
    }
}
