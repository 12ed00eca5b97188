//! The H(b) norm, inner product, reproducing kernel, and membership
//! diagnostics for the de Branges-Rovnyak space of a Pythagorean pair.
//!
//! For a nonextreme `b` with Pythagorean mate `a` and analytic quotient
//! `phi = b/a`, the space `H(b)` is the domain of the adjoint multiplier
//! `T_phibar`, normed by
//!
//! ```text
//! norm_b(f)^2 = norm_2(f)^2 + norm_2(T_phibar f)^2.
//! ```
//!
//! `T_phibar` is realized in coefficient space: if `phi = sum d_m z^m` then
//! `(T_phibar f)_j = sum_m conj(d_m) f_{m+j}`.  For the `(1-z)^{-alpha}`
//! family the weights `d_m` are exact binomial coefficients, so the only
//! discretization left in a norm is the truncation window itself.  Functions
//! outside the space reveal themselves through norm growth as the window is
//! refined; that is exactly how [`membership_sweep`] decides its verdict.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::DiskPoint;
use crate::pair::PythagoreanPair;
use crate::projection::{project_plus, synthesize};
use crate::series::{adjoint_apply, binomial_series, geometric_series, CoeffSeries};

/// Relative Cauchy tolerance on the last two norm refinements for a
/// `Member` verdict.
pub const MEMBER_REL_TOL: f64 = 1e-3;

/// Log-log slope of the final refinement step above which the norm sequence
/// is declared divergent.
pub const NONMEMBER_SLOPE: f64 = 0.05;

/// Energy-growth exponent (squared-norm log-log slope) above which a
/// truncated division is flagged divergent.
pub const DIVISION_ENERGY_SLOPE: f64 = 0.1;

/// Outcome of a cross-resolution membership probe.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Norm sequence settled (Cauchy within [`MEMBER_REL_TOL`]).
    Member,
    /// Norm sequence grows with a clear positive slope, or blew up.
    NonMember,
    /// Neither settled nor clearly growing at these resolutions.
    Inconclusive,
}

impl Verdict {
    /// Stable lowercase name, used in reports.
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Member => "member",
            Verdict::NonMember => "non-member",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

/// Membership probe result: the norm estimates per resolution, the verdict,
/// and the fitted log-log growth exponent of the norm sequence.
#[derive(Debug, Clone)]
pub struct MembershipReport {
    /// `(resolution, hb-norm estimate)` per requested resolution.
    pub norms_by_resolution: Vec<(usize, f64)>,
    /// Classification per the Cauchy/slope rules.
    pub verdict: Verdict,
    /// Least-squares slope of `ln norm` against `ln resolution`.
    pub growth_exponent: f64,
}

/// An H(b) element with its cached adjoint-multiplier image and norm.
#[derive(Debug, Clone)]
pub struct HbElement {
    f: CoeffSeries,
    tphibar_f: CoeffSeries,
    hb_norm_sq: f64,
}

impl HbElement {
    /// The coefficient window of the element itself.
    pub fn f(&self) -> &CoeffSeries {
        &self.f
    }

    /// Cached image under the adjoint multiplier.
    pub fn tphibar_f(&self) -> &CoeffSeries {
        &self.tphibar_f
    }

    /// Squared H(b) norm; always at least the squared Hardy norm.
    pub fn hb_norm_sq(&self) -> f64 {
        self.hb_norm_sq
    }

    /// H(b) norm.
    pub fn hb_norm(&self) -> f64 {
        self.hb_norm_sq.sqrt()
    }
}

/// Applies the adjoint multiplier `T_phibar` in coefficient space, using the
/// pair's quotient coefficients (exact binomials for family pairs).
pub fn t_phibar_apply(pair: &PythagoreanPair, f: &CoeffSeries) -> CoeffSeries {
    let weights = pair.multiplier().coefficients(f.len());
    adjoint_apply(weights.coeffs(), f)
}

/// Grid-route cross-check for [`t_phibar_apply`]: synthesizes `f` on the
/// pair's boundary grid, multiplies by `conj(phi)` nodewise, and projects
/// back onto the analytic window.
pub fn t_phibar_apply_grid(pair: &PythagoreanPair, f: &CoeffSeries) -> Result<CoeffSeries> {
    let boundary = synthesize(f, pair.grid())?;
    let product = boundary.pointwise_mul(&pair.phi_boundary().conj())?;
    project_plus(&product, pair.degree_bound())
}

/// Packages `f` with its adjoint image and H(b) norm.
pub fn hb_element(pair: &PythagoreanPair, f: CoeffSeries) -> HbElement {
    let tphibar_f = t_phibar_apply(pair, &f);
    let hb_norm_sq = f.h2_norm_sq() + tphibar_f.h2_norm_sq();
    HbElement {
        f,
        tphibar_f,
        hb_norm_sq,
    }
}

/// `sqrt(norm_2(f)^2 + norm_2(T_phibar f)^2)` at the pair's resolution.
pub fn hb_norm(pair: &PythagoreanPair, f: &CoeffSeries) -> f64 {
    hb_element(pair, f.clone()).hb_norm()
}

/// H(b) inner product by polarization:
/// `<u, v>_b = <u, v>_2 + <T_phibar u, T_phibar v>_2`.
pub fn hb_inner(pair: &PythagoreanPair, u: &CoeffSeries, v: &CoeffSeries) -> Complex64 {
    let tu = t_phibar_apply(pair, u);
    let tv = t_phibar_apply(pair, v);
    u.h2_inner(v) + tu.h2_inner(&tv)
}

/// Reproducing kernel `k_w^b(z) = (1 - conj(b(w)) b(z)) / (1 - conj(w) z)`,
/// with `b` evaluated through the pair's projected Taylor window.
pub fn kernel_kwb(pair: &PythagoreanPair, w: DiskPoint, z: DiskPoint) -> Complex64 {
    let bw = pair.b_series().evaluate(w);
    let bz = pair.b_series().evaluate(z);
    let one = Complex64::new(1.0, 0.0);
    (one - bw.conj() * bz) / (one - w.z().conj() * z.z())
}

/// Coefficient window of the reproducing kernel at `w`:
/// `k_w^b = (1 - conj(b(w)) b) * sum_k conj(w)^k z^k`, truncated to `m`.
pub fn kernel_series(pair: &PythagoreanPair, w: DiskPoint, m: usize) -> CoeffSeries {
    let bw = pair.b_series().evaluate(w);
    let numerator = CoeffSeries::constant(Complex64::new(1.0, 0.0), m)
        .add(&pair.b_series().truncate(m).scale(-bw.conj()));
    let szego = geometric_series(w.z().conj(), m);
    numerator.cauchy_product(&szego, m)
}

/// `|<f, k_w^b>_b - f(w)|` for a polynomial `f` of degree at most 32.
///
/// With the reproducing property holding exactly in the limit, the returned
/// defect measures the discretization quality of the pair.
pub fn reproducing_check(pair: &PythagoreanPair, f: &CoeffSeries, w: DiskPoint) -> Result<f64> {
    if f.len() > 33 {
        return Err(Error::InvalidInput(
            "reproducing_check expects a polynomial of degree at most 32",
        ));
    }
    let m = pair.degree_bound();
    let kw = kernel_series(pair, w, m);
    let lhs = hb_inner(pair, &f.truncate(m), &kw);
    Ok((lhs - f.evaluate(w)).norm())
}

/// Cross-resolution membership probe with a caller-supplied multiplier.
///
/// `phi_coeffs(m)` must return the first `m` Taylor coefficients of the
/// quotient `phi = b/a`; `f_at(m)` materializes the candidate's coefficient
/// window at resolution `m`.  Verdict rules:
///
/// * `Member` when the last two norms agree within [`MEMBER_REL_TOL`]
///   relative (or the function is identically zero),
/// * `NonMember` when a norm is non-finite or the final log-log slope is at
///   least [`NONMEMBER_SLOPE`],
/// * `Inconclusive` otherwise.
pub fn membership_sweep(
    phi_coeffs: impl Fn(usize) -> Result<CoeffSeries>,
    f_at: impl Fn(usize) -> Result<CoeffSeries>,
    resolutions: &[usize],
) -> Result<MembershipReport> {
    check_resolutions(resolutions)?;
    let mut norms = Vec::with_capacity(resolutions.len());
    for &m in resolutions {
        let f = f_at(m)?.truncate(m);
        let weights = phi_coeffs(m)?;
        let image = adjoint_apply(weights.coeffs(), &f);
        let norm = (f.h2_norm_sq() + image.h2_norm_sq()).sqrt();
        norms.push((m, norm));
    }
    Ok(classify(norms))
}

/// Membership probe in `H(b_alpha)`: the quotient is `(1-z)^{-alpha}` with
/// exact binomial coefficients.
pub fn membership_test(
    alpha: f64,
    f_at: impl Fn(usize) -> Result<CoeffSeries>,
    resolutions: &[usize],
) -> Result<MembershipReport> {
    if !alpha.is_finite() || alpha <= 0.0 {
        return Err(Error::InvalidAlpha(alpha));
    }
    membership_sweep(|m| Ok(binomial_series(-alpha, m)), f_at, resolutions)
}

fn check_resolutions(resolutions: &[usize]) -> Result<()> {
    let increasing = resolutions.windows(2).all(|w| w[0] < w[1]);
    if resolutions.len() < 3 || !increasing || resolutions[0] == 0 {
        return Err(Error::InvalidInput(
            "need at least three strictly increasing positive resolutions",
        ));
    }
    Ok(())
}

fn classify(norms: Vec<(usize, f64)>) -> MembershipReport {
    let growth_exponent = log_log_slope(&norms);
    let (m_prev, n_prev) = norms[norms.len() - 2];
    let (m_last, n_last) = norms[norms.len() - 1];
    let verdict = if !n_prev.is_finite() || !n_last.is_finite() {
        Verdict::NonMember
    } else if n_last == 0.0 && n_prev == 0.0 {
        Verdict::Member
    } else if (n_last - n_prev).abs() <= MEMBER_REL_TOL * n_last.abs() {
        Verdict::Member
    } else {
        let step = (n_last.ln() - n_prev.ln()) / ((m_last as f64).ln() - (m_prev as f64).ln());
        if step >= NONMEMBER_SLOPE {
            Verdict::NonMember
        } else {
            Verdict::Inconclusive
        }
    };
    MembershipReport {
        norms_by_resolution: norms,
        verdict,
        growth_exponent,
    }
}

/// Least-squares slope of `ln(value)` against `ln(resolution)` over the
/// finite, positive entries.
fn log_log_slope(points: &[(usize, f64)]) -> f64 {
    let data: Vec<(f64, f64)> = points
        .iter()
        .filter(|(_, v)| v.is_finite() && *v > 0.0)
        .map(|&(m, v)| ((m as f64).ln(), v.ln()))
        .collect();
    if data.len() < 2 {
        return f64::INFINITY;
    }
    let n = data.len() as f64;
    let sx: f64 = data.iter().map(|p| p.0).sum();
    let sy: f64 = data.iter().map(|p| p.1).sum();
    let sxx: f64 = data.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = data.iter().map(|p| p.0 * p.1).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

/// Diagnostic for the truncated division `f / (1-z)^alpha`.
///
/// The quotient window at resolution `m` is the Cauchy product of `f` with
/// the binomial series of `(1-z)^{-alpha}`.  When `f` does not divide, the
/// window norms grow without bound; the squared-norm log-log slope and the
/// quartile mass comparison both witness it.
#[derive(Debug, Clone)]
pub struct DivisionDiagnostic {
    /// `(resolution, l2 norm of the truncated quotient)`.
    pub norms_by_resolution: Vec<(usize, f64)>,
    /// Least-squares slope of `ln(norm^2)` against `ln(resolution)`.
    pub energy_growth_exponent: f64,
    /// Whether the norm sequence increased at every refinement.
    pub strictly_increasing: bool,
    /// Whether, at the top resolution, the last quarter of the coefficients
    /// carries more l2 mass than the first quarter.
    pub tail_heavy: bool,
    /// Combined divergence flag: energy slope above
    /// [`DIVISION_ENERGY_SLOPE`], or a heavy tail.
    pub divergent: bool,
}

/// Probes whether `f` lies in `(1-z)^alpha H^2` by watching the truncated
/// quotient `f (1-z)^{-alpha}` across resolutions.
pub fn division_diagnostic(
    alpha: f64,
    f_at: impl Fn(usize) -> Result<CoeffSeries>,
    resolutions: &[usize],
) -> Result<DivisionDiagnostic> {
    if !alpha.is_finite() || alpha <= 0.0 {
        return Err(Error::InvalidAlpha(alpha));
    }
    check_resolutions(resolutions)?;
    let mut norms = Vec::with_capacity(resolutions.len());
    let mut top_quotient = None;
    for &m in resolutions {
        let f = f_at(m)?.truncate(m);
        let quotient = f.cauchy_product(&binomial_series(-alpha, m), m);
        norms.push((m, quotient.h2_norm()));
        top_quotient = Some(quotient);
    }
    let energy: Vec<(usize, f64)> = norms.iter().map(|&(m, n)| (m, n * n)).collect();
    let energy_growth_exponent = log_log_slope(&energy);
    let strictly_increasing = norms.windows(2).all(|w| w[1].1 > w[0].1);
    let tail_heavy = {
        let q = top_quotient.expect("at least three resolutions");
        let quarter = q.len() / 4;
        let mass = |range: std::ops::Range<usize>| -> f64 {
            range.map(|k| q.coeff(k).norm_sqr()).sum()
        };
        quarter > 0 && mass(q.len() - quarter..q.len()) > mass(0..quarter)
    };
    let divergent = energy_growth_exponent > DIVISION_ENERGY_SLOPE || tail_heavy;
    Ok(DivisionDiagnostic {
        norms_by_resolution: norms,
        energy_growth_exponent,
        strictly_increasing,
        tail_heavy,
        divergent,
    })
}

/// Report of the inclusion probe `H(b_beta) subset H(b_alpha)`, alpha <= beta.
#[derive(Debug, Clone)]
pub struct InclusionReport {
    /// Membership in the larger space `H(b_alpha)`.
    pub lower: MembershipReport,
    /// Membership in the smaller space `H(b_beta)`.
    pub upper: MembershipReport,
    /// False only if the probe contradicts the inclusion (member above,
    /// non-member below).
    pub consistent: bool,
}

/// Checks the nesting `H(b_beta) subset H(b_alpha)` on a candidate `f`.
pub fn inclusion_check(
    alpha: f64,
    beta: f64,
    f_at: impl Fn(usize) -> Result<CoeffSeries>,
    resolutions: &[usize],
) -> Result<InclusionReport> {
    if !(alpha <= beta) {
        return Err(Error::InvalidInput(
            "inclusion check needs alpha <= beta",
        ));
    }
    let lower = membership_test(alpha, &f_at, resolutions)?;
    let upper = membership_test(beta, &f_at, resolutions)?;
    let consistent =
        !(upper.verdict == Verdict::Member && lower.verdict == Verdict::NonMember);
    Ok(InclusionReport {
        lower,
        upper,
        consistent,
    })
}

/// Taylor window of the finite Blaschke product with the given zeros, each
/// factor normalized to positive value at the origin (`z` itself for a zero
/// at the origin).  An empty zero list gives the constant one.
pub fn blaschke_coeffs(zeros: &[DiskPoint], m: usize) -> CoeffSeries {
    let mut u = CoeffSeries::constant(Complex64::new(1.0, 0.0), m);
    for w in zeros {
        let wz = w.z();
        let factor = if wz.norm() == 0.0 {
            // plain z
            let mut c = CoeffSeries::zeros(m.max(2));
            let mut v = c.into_coeffs();
            v[1] = Complex64::new(1.0, 0.0);
            c = CoeffSeries::new(v).expect("finite");
            c
        } else {
            // (|w|/w) (w - z) / (1 - conj(w) z)
            let scale = wz.norm() / wz;
            let geo = geometric_series(wz.conj(), m);
            let w_geo = geo.scale(wz * scale);
            let z_geo = geo.shift(1).scale(-scale);
            w_geo.add(&z_geo).truncate(m)
        };
        u = u.cauchy_product(&factor, m);
    }
    u
}

/// Report comparing membership of `f` in `H(b_alpha)` and in `H(u b_alpha)`
/// for a finite Blaschke product `u`; the two spaces coincide, so the
/// verdicts must agree.
#[derive(Debug, Clone)]
pub struct BlaschkeEquivReport {
    /// Membership in `H(b_alpha)`.
    pub base: MembershipReport,
    /// Membership in `H(u b_alpha)` via the quotient `u b_alpha / a_alpha`.
    pub twisted: MembershipReport,
    /// Whether the verdicts agree.
    pub agree: bool,
}

/// Compares membership verdicts in `H(b_alpha)` against `H(u b_alpha)`.
pub fn blaschke_equiv_check(
    alpha: f64,
    u_zeros: &[DiskPoint],
    f_at: impl Fn(usize) -> Result<CoeffSeries> + Copy,
    resolutions: &[usize],
) -> Result<BlaschkeEquivReport> {
    if !alpha.is_finite() || alpha <= 0.0 {
        return Err(Error::InvalidAlpha(alpha));
    }
    let base = membership_test(alpha, f_at, resolutions)?;
    let twisted = membership_sweep(
        |m| Ok(blaschke_coeffs(u_zeros, m).cauchy_product(&binomial_series(-alpha, m), m)),
        f_at,
        resolutions,
    )?;
    let agree = base.verdict == twisted.verdict;
    Ok(BlaschkeEquivReport {
        base,
        twisted,
        agree,
    })
}

/// `T_conj(psi)` for an analytic polynomial `psi`, in coefficient space.
pub fn t_conj_poly_apply(psi: &CoeffSeries, f: &CoeffSeries) -> CoeffSeries {
    adjoint_apply(psi.coeffs(), f)
}
