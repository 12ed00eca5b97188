//! Implementations of the report-producing subcommands.
//!
//! Each command builds a serializable report struct (JSON field order =
//! declaration order) and renders it through [`crate::emit`]; the CSV
//! schemas are documented in the subcommand help texts in `main.rs`.

use crate::emit::{self, Format};
use crate::failure::Failure;
use crate::fspec::FunctionSpec;
use hb_core::decompose::{alpha_order, decompose, DecompositionMode};
use hb_core::pair::PythagoreanPair;
use hb_core::regularity::{dyadic_cutoffs, regularity_integral};
use hb_core::series::binomial_series;
use hb_core::space::{hb_norm, membership_test};
use hb_core::toeplitz::q_power_section;
use hb_core::{BoundaryGrid, CoeffSeries, Complex64, DiskPoint};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

/// Rendered output plus an optional check-failure message (report is still
/// written when a checked tolerance is violated; the process then exits 1).
pub struct CommandOutput {
    pub bytes: Vec<u8>,
    pub failed: Option<String>,
}

fn re_im(c: Complex64) -> [f64; 2] {
    [c.re, c.im]
}

fn coeff_head(series: &CoeffSeries, max: usize) -> Vec<[f64; 2]> {
    series.coeffs().iter().take(max).map(|&c| re_im(c)).collect()
}

/// Draws a point in the disk of the given radius, area-uniformly.
pub fn random_disk_point(rng: &mut ChaCha8Rng, radius: f64) -> DiskPoint {
    let r = radius * rng.gen::<f64>().sqrt();
    let theta = rng.gen::<f64>() * std::f64::consts::TAU;
    DiskPoint::new(Complex64::from_polar(r, theta)).expect("inside the disk")
}

const COEFF_HEAD: usize = 32;

// ---------------------------------------------------------------- pair --

#[derive(Serialize)]
struct PairsReport {
    n_points: usize,
    degree: usize,
    seed: u64,
    pairs: Vec<PairReport>,
}

#[derive(Serialize)]
struct PairReport {
    alpha: f64,
    a_coeffs: Vec<[f64; 2]>,
    b_coeffs: Vec<[f64; 2]>,
    diagnostics: DiagnosticsOut,
}

#[derive(Serialize)]
struct DiagnosticsOut {
    pyth_residual: f64,
    corona_min: f64,
    corona_floor: f64,
    phi_consistency: f64,
    b_at_one: [f64; 2],
    b_at_one_error: f64,
    b_at_one_stable: bool,
    arg_b_max: f64,
    sandwich: Vec<SandwichOut>,
    sandwich_all_within: bool,
}

#[derive(Serialize)]
struct SandwichOut {
    z: [f64; 2],
    lower: f64,
    value: f64,
    upper: f64,
    within_bounds: bool,
}

#[allow(clippy::too_many_arguments)]
pub fn pair(
    alphas: &[f64],
    n_points: usize,
    degree: Option<usize>,
    seed: u64,
    tol_pyth: f64,
    tol_lim: f64,
    sandwich_points: usize,
    format: Format,
) -> Result<CommandOutput, Failure> {
    let grid = BoundaryGrid::new(n_points)?;
    let degree = degree.unwrap_or(n_points / 4);
    let mut pairs = Vec::with_capacity(alphas.len());
    let mut failures = Vec::new();
    for (i, &alpha) in alphas.iter().enumerate() {
        let p = PythagoreanPair::pair_alpha(alpha, grid, degree)?;
        let d = p.diagnostics();
        let arg_b_max = (1..=9)
            .map(|k| {
                let z = DiskPoint::real(k as f64 / 10.0).expect("radius < 1");
                p.b_at(z).arg().abs()
            })
            .fold(0.0f64, f64::max);
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
        let sandwich: Vec<SandwichOut> = (0..sandwich_points)
            .map(|_| {
                let z = random_disk_point(&mut rng, 0.95);
                let r = p.sandwich_check(z)?;
                Ok(SandwichOut {
                    z: re_im(z.z()),
                    lower: r.lower,
                    value: r.value,
                    upper: r.upper,
                    within_bounds: r.within_bounds,
                })
            })
            .collect::<Result<_, Failure>>()?;
        let sandwich_all_within = sandwich.iter().all(|s| s.within_bounds);
        let b_at_one_error = (d.b_at_one - Complex64::new(1.0, 0.0)).norm();
        if d.pyth_residual > tol_pyth {
            failures.push(format!(
                "alpha {alpha}: Pythagorean residual {:.3e} exceeds {tol_pyth:.1e}",
                d.pyth_residual
            ));
        }
        if d.corona_min < PythagoreanPair::corona_bound(alpha) - 1e-9 {
            failures.push(format!(
                "alpha {alpha}: corona minimum {:.6} below floor",
                d.corona_min
            ));
        }
        if b_at_one_error > tol_lim {
            failures.push(format!(
                "alpha {alpha}: b(1) extrapolation off by {b_at_one_error:.3e} (tol {tol_lim:.1e})"
            ));
        }
        if !sandwich_all_within {
            failures.push(format!("alpha {alpha}: modulus sandwich violated"));
        }
        pairs.push(PairReport {
            alpha,
            a_coeffs: coeff_head(p.a_series(), COEFF_HEAD),
            b_coeffs: coeff_head(p.b_series(), COEFF_HEAD),
            diagnostics: DiagnosticsOut {
                pyth_residual: d.pyth_residual,
                corona_min: d.corona_min,
                corona_floor: PythagoreanPair::corona_bound(alpha),
                phi_consistency: p.phi_consistency_residual(),
                b_at_one: re_im(d.b_at_one),
                b_at_one_error,
                b_at_one_stable: d.b_at_one_stable,
                arg_b_max,
                sandwich,
                sandwich_all_within,
            },
        });
    }
    let report = PairsReport {
        n_points,
        degree,
        seed,
        pairs,
    };
    let bytes = match format {
        Format::Json => emit::to_json_bytes(&report),
        Format::Csv => pair_csv(&report),
    };
    Ok(CommandOutput {
        bytes,
        failed: (!failures.is_empty()).then(|| failures.join("; ")),
    })
}

fn pair_csv(report: &PairsReport) -> Vec<u8> {
    let mut w = emit::csv_writer();
    w.write_record([
        "alpha",
        "n_points",
        "degree",
        "pyth_residual",
        "corona_min",
        "corona_floor",
        "phi_consistency",
        "b_at_one_re",
        "b_at_one_im",
        "b_at_one_error",
        "arg_b_max",
        "sandwich_all_within",
    ])
    .expect("csv");
    for p in &report.pairs {
        let d = &p.diagnostics;
        w.write_record([
            emit::cell(p.alpha),
            report.n_points.to_string(),
            report.degree.to_string(),
            emit::cell(d.pyth_residual),
            emit::cell(d.corona_min),
            emit::cell(d.corona_floor),
            emit::cell(d.phi_consistency),
            emit::cell(d.b_at_one[0]),
            emit::cell(d.b_at_one[1]),
            emit::cell(d.b_at_one_error),
            emit::cell(d.arg_b_max),
            d.sandwich_all_within.to_string(),
        ])
        .expect("csv");
    }
    emit::csv_bytes(w)
}

// ---------------------------------------------------------------- norm --

#[derive(Serialize)]
struct NormReport {
    alpha: f64,
    f: String,
    n_points: usize,
    degree: usize,
    hb_norm: f64,
    h2_norm: f64,
    membership: MembershipOut,
}

#[derive(Serialize)]
struct MembershipOut {
    norms_by_resolution: Vec<(usize, f64)>,
    verdict: String,
    growth_exponent: f64,
}

pub fn norm(
    alpha: f64,
    f_spec: &str,
    n_points: usize,
    degree: Option<usize>,
    resolutions: &[usize],
    format: Format,
) -> Result<CommandOutput, Failure> {
    let spec = FunctionSpec::parse(f_spec)?;
    let grid = BoundaryGrid::new(n_points)?;
    let degree = degree.unwrap_or(n_points / 4);
    let pair = PythagoreanPair::pair_alpha(alpha, grid, degree)?;
    let f = spec.window(degree);
    let membership = membership_test(alpha, |m| Ok(spec.window(m)), resolutions)?;
    let report = NormReport {
        alpha,
        f: spec.source().to_string(),
        n_points,
        degree,
        hb_norm: hb_norm(&pair, &f),
        h2_norm: f.h2_norm(),
        membership: MembershipOut {
            norms_by_resolution: membership.norms_by_resolution.clone(),
            verdict: membership.verdict.as_str().to_string(),
            growth_exponent: membership.growth_exponent,
        },
    };
    let bytes = match format {
        Format::Json => emit::to_json_bytes(&report),
        Format::Csv => norm_csv(&report),
    };
    Ok(CommandOutput {
        bytes,
        failed: None,
    })
}

fn norm_csv(report: &NormReport) -> Vec<u8> {
    let mut w = emit::csv_writer();
    w.write_record([
        "alpha",
        "f",
        "resolution",
        "sweep_norm",
        "hb_norm",
        "h2_norm",
        "verdict",
        "growth_exponent",
    ])
    .expect("csv");
    for &(m, norm) in &report.membership.norms_by_resolution {
        w.write_record([
            emit::cell(report.alpha),
            report.f.clone(),
            m.to_string(),
            emit::cell(norm),
            emit::cell(report.hb_norm),
            emit::cell(report.h2_norm),
            report.membership.verdict.clone(),
            emit::cell(report.membership.growth_exponent),
        ])
        .expect("csv");
    }
    emit::csv_bytes(w)
}

// ----------------------------------------------------------- decompose --

#[derive(Serialize)]
struct DecomposeReport {
    alpha: f64,
    f: String,
    n_points: usize,
    degree: usize,
    mode: String,
    poly_coeffs: Vec<[f64; 2]>,
    ma_coeffs: Vec<[f64; 2]>,
    an_coeffs: Vec<[f64; 2]>,
    residual_norm: f64,
    radial_agreement: Option<f64>,
}

fn mode_name(mode: DecompositionMode) -> &'static str {
    match mode {
        DecompositionMode::PureDivision => "pure-division",
        DecompositionMode::TaylorPlusDivision => "taylor-plus-division",
        DecompositionMode::HalfIntegerLeastSquares => "half-integer-least-squares",
    }
}

pub fn decompose_cmd(
    alpha: f64,
    f_spec: &str,
    n_points: usize,
    degree: usize,
    tol_dec: f64,
    format: Format,
) -> Result<CommandOutput, Failure> {
    let spec = FunctionSpec::parse(f_spec)?;
    let grid = BoundaryGrid::new(n_points)?;
    let dec = decompose(alpha, |m| Ok(spec.window(m)), grid, degree)?;
    let report = DecomposeReport {
        alpha,
        f: spec.source().to_string(),
        n_points,
        degree,
        mode: mode_name(dec.mode).to_string(),
        poly_coeffs: coeff_head(&dec.poly_part, COEFF_HEAD),
        ma_coeffs: coeff_head(&dec.ma_factor, COEFF_HEAD),
        an_coeffs: coeff_head(&dec.an_part, COEFF_HEAD),
        residual_norm: dec.residual_norm,
        radial_agreement: dec.radial_agreement,
    };
    let failed = (dec.residual_norm > tol_dec).then(|| {
        format!(
            "decomposition residual {:.3e} exceeds tolerance {tol_dec:.1e}",
            dec.residual_norm
        )
    });
    let bytes = match format {
        Format::Json => emit::to_json_bytes(&report),
        Format::Csv => decompose_csv(&report),
    };
    Ok(CommandOutput { bytes, failed })
}

fn decompose_csv(report: &DecomposeReport) -> Vec<u8> {
    let mut w = emit::csv_writer();
    w.write_record([
        "alpha",
        "f",
        "mode",
        "residual_norm",
        "radial_agreement",
        "part",
        "index",
        "re",
        "im",
    ])
    .expect("csv");
    let parts: [(&str, &Vec<[f64; 2]>); 3] = [
        ("poly", &report.poly_coeffs),
        ("ma", &report.ma_coeffs),
        ("an", &report.an_coeffs),
    ];
    for (name, coeffs) in parts {
        for (k, c) in coeffs.iter().enumerate() {
            w.write_record([
                emit::cell(report.alpha),
                report.f.clone(),
                report.mode.clone(),
                emit::cell(report.residual_norm),
                report.radial_agreement.map(emit::cell).unwrap_or_default(),
                name.to_string(),
                k.to_string(),
                emit::cell(c[0]),
                emit::cell(c[1]),
            ])
            .expect("csv");
        }
    }
    emit::csv_bytes(w)
}

// ------------------------------------------------------------ spectral --

#[derive(Serialize)]
struct SpectralReport {
    alphas: Vec<f64>,
    resolutions: Vec<usize>,
    tol_kernel: f64,
    sigma_sweeps: Vec<SigmaSweep>,
    kernels: Vec<KernelOut>,
}

#[derive(Serialize)]
struct SigmaSweep {
    alpha: f64,
    beta: f64,
    by_dim: Vec<(usize, f64)>,
}

#[derive(Serialize)]
struct KernelOut {
    alpha: f64,
    dim: usize,
    dimension: usize,
    threshold: f64,
    sigma_max: f64,
    gap_ratio: f64,
    trusted: bool,
    smallest: Vec<f64>,
    candidate_residuals: Vec<f64>,
}

/// Half-integer form `alpha = n + 1/2` with `n >= 1`, if applicable.
fn half_integer_n(alpha: f64) -> Option<usize> {
    let n = alpha - 0.5;
    (n > 0.0 && n.fract() == 0.0).then_some(n as usize)
}

pub fn spectral(
    alphas: &[f64],
    resolutions: &[usize],
    tol_kernel: f64,
    format: Format,
) -> Result<CommandOutput, Failure> {
    if alphas.is_empty() {
        return Err(Failure::Usage("need at least one alpha".to_string()));
    }
    if resolutions.is_empty() || resolutions.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Failure::Usage(
            "resolutions must be a strictly increasing nonempty list".to_string(),
        ));
    }
    if !(tol_kernel.is_finite() && tol_kernel > 0.0) {
        return Err(Failure::Usage("kernel threshold must be positive".to_string()));
    }
    let sigma_sweeps: Vec<SigmaSweep> = alphas
        .par_iter()
        .map(|&alpha| {
            let n = alpha_order(alpha)?.n;
            let beta = alpha - n as f64;
            let by_dim = resolutions
                .iter()
                .map(|&dim| {
                    let sec = q_power_section(beta, dim)?;
                    Ok((dim, sec.smallest_singular_values(1)?[0]))
                })
                .collect::<Result<Vec<_>, Failure>>()?;
            Ok(SigmaSweep { alpha, beta, by_dim })
        })
        .collect::<Result<_, Failure>>()?;
    let top = *resolutions.last().expect("nonempty");
    let kernels: Vec<KernelOut> = alphas
        .par_iter()
        .map(|&alpha| {
            // rigidity probe symbol: conj((1-z)^alpha) / (1-z)^alpha, which
            // is the unimodular power Q^{-alpha} on the circle
            let sec = q_power_section(-alpha, top)?;
            let est = sec.kernel_dimension_estimate(tol_kernel)?;
            let candidate_residuals = match half_integer_n(alpha) {
                Some(n) => (0..n)
                    .map(|k| {
                        let cand = binomial_series(0.5, top).shift(k).truncate(top);
                        sec.kernel_vector_residual(&cand)
                    })
                    .collect::<hb_core::Result<Vec<f64>>>()?,
                None => Vec::new(),
            };
            Ok(KernelOut {
                alpha,
                dim: top,
                dimension: est.dimension,
                threshold: est.threshold,
                sigma_max: est.sigma_max,
                gap_ratio: est.gap_ratio,
                trusted: est.trusted,
                smallest: est.smallest,
                candidate_residuals,
            })
        })
        .collect::<Result<_, Failure>>()?;
    let report = SpectralReport {
        alphas: alphas.to_vec(),
        resolutions: resolutions.to_vec(),
        tol_kernel,
        sigma_sweeps,
        kernels,
    };
    let bytes = match format {
        Format::Json => emit::to_json_bytes(&report),
        Format::Csv => spectral_csv(&report),
    };
    Ok(CommandOutput {
        bytes,
        failed: None,
    })
}

fn spectral_csv(report: &SpectralReport) -> Vec<u8> {
    let mut w = emit::csv_writer();
    w.write_record([
        "record",
        "alpha",
        "dim",
        "sigma_min",
        "kernel_dim",
        "gap_ratio",
        "trusted",
        "max_candidate_residual",
    ])
    .expect("csv");
    for sweep in &report.sigma_sweeps {
        for &(dim, sigma) in &sweep.by_dim {
            w.write_record([
                "sigma".to_string(),
                emit::cell(sweep.alpha),
                dim.to_string(),
                emit::cell(sigma),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
            ])
            .expect("csv");
        }
    }
    for k in &report.kernels {
        let max_res = k.candidate_residuals.iter().cloned().fold(f64::NAN, f64::max);
        w.write_record([
            "kernel".to_string(),
            emit::cell(k.alpha),
            k.dim.to_string(),
            String::new(),
            k.dimension.to_string(),
            emit::cell(k.gap_ratio),
            k.trusted.to_string(),
            emit::cell(max_res),
        ])
        .expect("csv");
    }
    emit::csv_bytes(w)
}

// ---------------------------------------------------------- regularity --

#[derive(Serialize)]
struct RegularityTable {
    alphas: Vec<f64>,
    orders: Vec<usize>,
    cutoffs: Vec<f64>,
    rows: Vec<RegularityRow>,
}

#[derive(Serialize)]
struct RegularityRow {
    alpha: f64,
    n: usize,
    values: Vec<(f64, f64)>,
    slopes: Vec<f64>,
    tail_slope: f64,
    slope_drift: f64,
    fitted_exponent: f64,
    verdict: String,
}

pub fn regularity_cmd(
    alphas: &[f64],
    orders: &[usize],
    cutoffs: Option<&[f64]>,
    format: Format,
) -> Result<CommandOutput, Failure> {
    if alphas.is_empty() || orders.is_empty() {
        return Err(Failure::Usage(
            "need at least one alpha and one order".to_string(),
        ));
    }
    let cutoffs: Vec<f64> = match cutoffs {
        Some(c) => c.to_vec(),
        None => dyadic_cutoffs(4, 14),
    };
    let grid: Vec<(f64, usize)> = alphas
        .iter()
        .flat_map(|&a| orders.iter().map(move |&n| (a, n)))
        .collect();
    let rows: Vec<RegularityRow> = grid
        .par_iter()
        .map(|&(alpha, n)| {
            let r = regularity_integral(alpha, n, &cutoffs)?;
            Ok(RegularityRow {
                alpha,
                n,
                values: r.values_by_cutoff,
                slopes: r.slopes,
                tail_slope: r.tail_slope,
                slope_drift: r.slope_drift,
                fitted_exponent: r.fitted_exponent,
                verdict: r.verdict.as_str().to_string(),
            })
        })
        .collect::<Result<_, Failure>>()?;
    let report = RegularityTable {
        alphas: alphas.to_vec(),
        orders: orders.to_vec(),
        cutoffs,
        rows,
    };
    let bytes = match format {
        Format::Json => emit::to_json_bytes(&report),
        Format::Csv => regularity_csv(&report),
    };
    Ok(CommandOutput {
        bytes,
        failed: None,
    })
}

fn regularity_csv(report: &RegularityTable) -> Vec<u8> {
    let mut w = emit::csv_writer();
    w.write_record([
        "alpha",
        "n",
        "cutoff",
        "value",
        "fitted_exponent",
        "tail_slope",
        "slope_drift",
        "verdict",
    ])
    .expect("csv");
    for row in &report.rows {
        for &(eps, value) in &row.values {
            w.write_record([
                emit::cell(row.alpha),
                row.n.to_string(),
                emit::cell(eps),
                emit::cell(value),
                emit::cell(row.fitted_exponent),
                emit::cell(row.tail_slope),
                emit::cell(row.slope_drift),
                row.verdict.clone(),
            ])
            .expect("csv");
        }
    }
    emit::csv_bytes(w)
}
