//! Acceptance battery: fourteen numbered criteria covering the pair
//! construction, norms, kernels, decompositions, regularity, and CLI
//! determinism.  Prints one pass/fail line per criterion and exits
//! nonzero if any fail.
//!
//! Built without the default test harness so the battery controls its own
//! report format and exit code.  All randomness is drawn from fixed ChaCha
//! seeds, so the battery itself is deterministic.

use std::process::Command;
use std::time::Instant;

use hb_core::decompose::{decompose, decompose_mabar};
use hb_core::pair::PythagoreanPair;
use hb_core::regularity::{dyadic_cutoffs, regularity_integral, RegularityVerdict};
use hb_core::series::binomial_series;
use hb_core::space::{
    blaschke_equiv_check, division_diagnostic, hb_norm, membership_test, reproducing_check,
    Verdict,
};
use hb_core::toeplitz::q_power_section;
use hb_core::{BoundaryGrid, CoeffSeries, Complex64, DiskPoint};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// `Ok(detail)` when the criterion holds, `Err(detail)` when it does not.
type Outcome = Result<String, String>;

fn main() {
    let criteria: Vec<(&str, fn() -> Outcome)> = vec![
        ("Pythagorean identity on the boundary grid", c01_pythagorean),
        ("corona lower bound on |b|", c02_corona),
        ("modulus sandwich at interior points", c03_sandwich),
        ("boundary value b(1)=1 and real positivity", c04_boundary_value),
        ("golden-ratio spot value b_1(0)", c05_golden_ratio),
        ("norm of 1 and H^2 domination", c06_norm_formula),
        ("reproducing property of k_w^b", c07_reproducing),
        ("decomposition round-trip", c08_roundtrip),
        ("mate-multiplier splitting", c09_mate_splitting),
        ("rigidity kernel dimensions", c10_kernel_dims),
        ("regularity verdict table", c11_regularity),
        ("strict inclusion at alpha = 1/2", c12_strict_inclusion),
        ("inner-factor twist invariance", c13_blaschke),
        ("check-all determinism", c14_determinism),
    ];
    let mut failed = 0usize;
    for (idx, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => {
                println!("C{:02} PASS {secs:7.2}s  {name}: {detail}", idx + 1);
            }
            Err(detail) => {
                failed += 1;
                println!("C{:02} FAIL {secs:7.2}s  {name}: {detail}", idx + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed}/14 criteria FAILED");
        std::process::exit(1);
    }
    println!("14/14 criteria passed");
}

fn ok<T>(r: hb_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| format!("error: {e}"))
}

fn gate(pass: bool, detail: String) -> Outcome {
    if pass {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// Area-uniform draw from the disk of the given radius.
fn disk_point(rng: &mut ChaCha8Rng, radius: f64) -> DiskPoint {
    let r = radius * rng.gen::<f64>().sqrt();
    let theta = rng.gen::<f64>() * std::f64::consts::TAU;
    DiskPoint::new(Complex64::from_polar(r, theta)).expect("inside the disk")
}

/// Random polynomial window with coefficients uniform in the unit box.
fn uniform_series(rng: &mut ChaCha8Rng, len: usize) -> CoeffSeries {
    let coeffs: Vec<Complex64> = (0..len)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    CoeffSeries::new(coeffs).expect("finite coefficients")
}

const PAIR_ALPHAS: [f64; 6] = [0.25, 0.5, 1.0, 1.5, 2.0, 2.5];

fn c01_pythagorean() -> Outcome {
    let grid = ok(BoundaryGrid::new(4096))?;
    let mut worst = 0.0f64;
    for alpha in PAIR_ALPHAS {
        let d = ok(PythagoreanPair::pair_alpha(alpha, grid, 1024))?.diagnostics();
        worst = worst.max(d.pyth_residual);
    }
    gate(
        worst <= 1e-8,
        format!("max nodewise | |a|^2+|b|^2-1 | = {worst:.3e} (tol 1.0e-8) at n_points=4096"),
    )
}

fn c02_corona() -> Outcome {
    let grid = ok(BoundaryGrid::new(4096))?;
    let mut margin = f64::INFINITY;
    for alpha in PAIR_ALPHAS {
        let d = ok(PythagoreanPair::pair_alpha(alpha, grid, 1024))?.diagnostics();
        margin = margin.min(d.corona_min - PythagoreanPair::corona_bound(alpha));
    }
    gate(
        margin >= -1e-9,
        format!("min grid |b| clears (1+4^alpha)^(-1/2) by {margin:.3e} (slack 1.0e-9)"),
    )
}

fn c03_sandwich() -> Outcome {
    let grid = ok(BoundaryGrid::new(4096))?;
    let mut rng = ChaCha8Rng::seed_from_u64(4051);
    let mut within = 0usize;
    let mut total = 0usize;
    for alpha in PAIR_ALPHAS {
        let pair = ok(PythagoreanPair::pair_alpha(alpha, grid, 1024))?;
        for _ in 0..50 {
            let z = disk_point(&mut rng, 0.95);
            total += 1;
            if ok(pair.sandwich_check(z))?.within_bounds {
                within += 1;
            }
        }
    }
    gate(
        within == total,
        format!("{within}/{total} interior points satisfy the |a| modulus sandwich (relative slack 1.0e-9)"),
    )
}

fn c04_boundary_value() -> Outcome {
    let grid = ok(BoundaryGrid::new(65536))?;
    let mut worst_b1 = 0.0f64;
    let mut worst_arg = 0.0f64;
    let mut stable = true;
    for alpha in [0.5, 1.0, 2.5] {
        let pair = ok(PythagoreanPair::pair_alpha(alpha, grid, 16384))?;
        let d = pair.diagnostics();
        worst_b1 = worst_b1.max((d.b_at_one - Complex64::new(1.0, 0.0)).norm());
        stable = stable && d.b_at_one_stable;
        for k in 1..=9 {
            let z = DiskPoint::real(k as f64 / 10.0).expect("radius < 1");
            worst_arg = worst_arg.max(pair.b_at(z).arg().abs());
        }
    }
    gate(
        worst_b1 <= 1e-3 && worst_arg <= 1e-8 && stable,
        format!(
            "radial extrapolation |b(1)-1| <= {worst_b1:.3e} (tol 1.0e-3), max |arg b(r)| = {worst_arg:.3e} (tol 1.0e-8), stable: {stable}"
        ),
    )
}

fn c05_golden_ratio() -> Outcome {
    let grid = ok(BoundaryGrid::new(4096))?;
    let pair = ok(PythagoreanPair::pair_alpha(1.0, grid, 1024))?;
    let exact = ((3.0 + 5.0f64.sqrt()) / 2.0).powf(-0.5);
    let b0 = pair.b_at(DiskPoint::real(0.0).expect("origin"));
    let err = (b0 - Complex64::new(exact, 0.0)).norm();
    gate(
        err <= 1e-6,
        format!("|b_1(0) - ((3+sqrt 5)/2)^(-1/2)| = {err:.3e} (tol 1.0e-6)"),
    )
}

fn c06_norm_formula() -> Outcome {
    let grid = ok(BoundaryGrid::new(256))?;
    let alphas = [0.25, 1.0, 1.5];
    let mut pairs = Vec::new();
    let mut worst = 0.0f64;
    for alpha in alphas {
        let pair = ok(PythagoreanPair::pair_alpha(alpha, grid, 64))?;
        let one = CoeffSeries::constant(Complex64::new(1.0, 0.0), 64);
        worst = worst.max((hb_norm(&pair, &one) - 2.0f64.sqrt()).abs());
        pairs.push(pair);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4061);
    let mut dominated = 0usize;
    for i in 0..100 {
        let len = rng.gen_range(1..=17);
        let f = uniform_series(&mut rng, len);
        let pair = &pairs[i % pairs.len()];
        if hb_norm(pair, &f) >= f.h2_norm() {
            dominated += 1;
        }
    }
    gate(
        worst <= 1e-4 && dominated == 100,
        format!(
            "max | norm_b(1) - sqrt 2 | = {worst:.3e} (tol 1.0e-4); H^2 norm dominated on {dominated}/100 random polynomials"
        ),
    )
}

fn c07_reproducing() -> Outcome {
    // The outer-function window for alpha = 1/4 has slowly decaying
    // coefficients, so that pair gets a denser grid than the others.
    let alphas = [0.25, 1.0, 1.5, 2.0];
    let mut pairs = Vec::new();
    for alpha in alphas {
        let (n_points, degree) = if alpha < 0.75 {
            (1usize << 19, 1usize << 17)
        } else {
            (1usize << 16, 1usize << 14)
        };
        let grid = ok(BoundaryGrid::new(n_points))?;
        pairs.push(ok(PythagoreanPair::pair_alpha(alpha, grid, degree))?);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4071);
    let mut worst = 0.0f64;
    for i in 0..20 {
        let pair = &pairs[i % pairs.len()];
        let len = rng.gen_range(1..=17);
        let f = uniform_series(&mut rng, len);
        let w = disk_point(&mut rng, 0.9);
        worst = worst.max(ok(reproducing_check(pair, &f, w))?);
    }
    gate(
        worst <= 1e-6,
        format!("max |<f, k_w^b>_b - f(w)| = {worst:.3e} over 20 random (f, w, alpha) draws (tol 1.0e-6)"),
    )
}

fn c08_roundtrip() -> Outcome {
    let grid = ok(BoundaryGrid::new(4096))?;
    let m = 1024usize;
    let mut rng = ChaCha8Rng::seed_from_u64(4081);
    let mut worst_poly = 0.0f64;
    let mut worst_residual = 0.0f64;
    let mut worst_radial = 0.0f64;
    let mut count = 0usize;
    for alpha in [0.75f64, 1.0, 1.3, 2.0, 2.4] {
        let n = (alpha + 0.5).floor() as usize;
        for _ in 0..10 {
            let p = uniform_series(&mut rng, n);
            let h_len = rng.gen_range(1..=33);
            let h = uniform_series(&mut rng, h_len);
            let f_at = |mm: usize| -> hb_core::Result<CoeffSeries> {
                let tail = binomial_series(alpha, mm).cauchy_product(&h.truncate(mm), mm);
                Ok(p.truncate(mm).add(&tail))
            };
            let dec = ok(decompose(alpha, f_at, grid, m))?;
            worst_residual = worst_residual.max(dec.residual_norm);
            for k in 0..n {
                worst_poly = worst_poly.max((dec.poly_part.coeff(k) - p.coeff(k)).norm());
            }
            let radial = dec
                .radial_agreement
                .ok_or_else(|| "missing radial cross-check".to_string())?;
            worst_radial = worst_radial.max(radial);
            count += 1;
        }
    }
    gate(
        count == 50 && worst_poly <= 1e-5 && worst_residual <= 1e-6 && worst_radial <= 1e-4,
        format!(
            "50 synthetic members split back: poly error <= {worst_poly:.3e} (tol 1.0e-5), residual <= {worst_residual:.3e} (tol 1.0e-6), radial-limit agreement <= {worst_radial:.3e} (tol 1.0e-4)"
        ),
    )
}

fn c09_mate_splitting() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(397);
    let gs: Vec<CoeffSeries> = (0..20)
        .map(|_| {
            let coeffs: Vec<Complex64> = (0..17)
                .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
                .collect();
            CoeffSeries::new(coeffs).expect("finite coefficients")
        })
        .collect();
    let mut worst = 0.0f64;
    let mut refinements = 0usize;
    let mut refine_ok = true;
    for alpha in [1.0, 1.3, 2.2] {
        for (i, g) in gs.iter().enumerate() {
            let d512 = ok(decompose_mabar(alpha, g, 512))?;
            worst = worst.max(d512.residual);
            if i < 3 {
                let d1024 = ok(decompose_mabar(alpha, g, 1024))?;
                refine_ok = refine_ok && d1024.residual <= d512.residual * 1.05 + 1e-12;
                refinements += 1;
            }
        }
    }
    gate(
        worst <= 1e-6 && refine_ok && refinements == 9,
        format!(
            "max reconstruction residual {worst:.3e} at N=512 over 20 g x 3 alpha (tol 1.0e-6); residual non-increasing under N-doubling in {refinements}/9 spot checks: {refine_ok}"
        ),
    )
}

fn c10_kernel_dims() -> Outcome {
    let top = 1024usize;
    let mut dims_ok = true;
    let mut trusted = true;
    let mut dims = Vec::new();
    let mut worst_candidate = 0.0f64;
    for (alpha, expected) in [(0.25, 0usize), (0.5, 0), (1.5, 1), (2.5, 2)] {
        let sec = ok(q_power_section(-alpha, top))?;
        let est = ok(sec.kernel_dimension_estimate(1e-6))?;
        dims_ok = dims_ok && est.dimension == expected;
        trusted = trusted && est.trusted;
        dims.push(format!("alpha {alpha}: {}", est.dimension));
        for k in 0..expected {
            let cand = binomial_series(0.5, top).shift(k).truncate(top);
            worst_candidate = worst_candidate.max(ok(sec.kernel_vector_residual(&cand))?);
        }
    }
    gate(
        dims_ok && trusted && worst_candidate <= 1e-3,
        format!(
            "N=1024, threshold 1.0e-6: dimensions [{}]; candidate (1-z)^(1/2) z^k residuals <= {worst_candidate:.3e} (tol 1.0e-3)",
            dims.join(", ")
        ),
    )
}

fn c11_regularity() -> Outcome {
    let cutoffs = dyadic_cutoffs(4, 14);
    let mut mismatches = Vec::new();
    let mut worst_exponent_err = 0.0f64;
    let mut total = 0usize;
    for n in [1usize, 2] {
        let boundary = n as f64 - 0.5;
        for k in 0..13 {
            let alpha = (3 + 2 * k) as f64 / 10.0;
            total += 1;
            let r = ok(regularity_integral(alpha, n, &cutoffs))?;
            if (alpha - boundary).abs() < 0.05 {
                if r.verdict != RegularityVerdict::Inconclusive {
                    mismatches.push(format!("alpha {alpha} n {n}: {}", r.verdict.as_str()));
                }
                continue;
            }
            let want = if alpha > boundary {
                RegularityVerdict::Converges
            } else {
                RegularityVerdict::Diverges
            };
            if r.verdict != want {
                mismatches.push(format!("alpha {alpha} n {n}: {}", r.verdict.as_str()));
            }
            if want == RegularityVerdict::Diverges {
                let target = 2.0 * alpha + 1.0 - 2.0 * n as f64;
                worst_exponent_err = worst_exponent_err.max((r.fitted_exponent - target).abs());
            }
        }
    }
    gate(
        mismatches.is_empty() && worst_exponent_err <= 0.1,
        format!(
            "{}/{total} verdicts match the alpha > n - 1/2 rule (0.05-wide band flagged inconclusive); divergence exponent off 2 alpha + 1 - 2n by <= {worst_exponent_err:.3e} (tol 0.1){}",
            total - mismatches.len(),
            if mismatches.is_empty() {
                String::new()
            } else {
                format!("; mismatches: {}", mismatches.join(", "))
            }
        ),
    )
}

fn c12_strict_inclusion() -> Outcome {
    let res = [256usize, 512, 1024, 2048];
    let ones = |m: usize| Ok(CoeffSeries::constant(Complex64::new(1.0, 0.0), m));
    let member = ok(membership_test(0.5, ones, &res))?;
    let div = ok(division_diagnostic(0.5, ones, &res))?;
    gate(
        member.verdict == Verdict::Member && div.energy_growth_exponent > 0.1,
        format!(
            "f=1 at alpha 1/2: verdict {}, truncated-division energy growth exponent {:.3} (> 0.1 required)",
            member.verdict.as_str(),
            div.energy_growth_exponent
        ),
    )
}

fn c13_blaschke() -> Outcome {
    let res = [64usize, 128, 256, 512];
    let origin = DiskPoint::real(0.0).expect("origin");
    let half = DiskPoint::real(0.5).expect("radius < 1");
    let zero_lists: [&[DiskPoint]; 2] = [&[origin], &[half]];
    let suite: Vec<(&str, fn(usize) -> hb_core::Result<CoeffSeries>)> = vec![
        ("1", |m| Ok(CoeffSeries::constant(Complex64::new(1.0, 0.0), m))),
        ("z", |m| {
            Ok(CoeffSeries::constant(Complex64::new(1.0, 0.0), 1)
                .shift(1)
                .truncate(m))
        }),
        ("z^3", |m| {
            Ok(CoeffSeries::constant(Complex64::new(1.0, 0.0), 1)
                .shift(3)
                .truncate(m))
        }),
        ("1+2z+z^2", |m| {
            CoeffSeries::new(vec![
                Complex64::new(1.0, 0.0),
                Complex64::new(2.0, 0.0),
                Complex64::new(1.0, 0.0),
            ])
            .map(|s| s.truncate(m))
        }),
        ("1/(1-z/2)", |m| {
            let coeffs: Vec<Complex64> = (0..m)
                .map(|k| Complex64::new(0.5f64.powi(k as i32), 0.0))
                .collect();
            CoeffSeries::new(coeffs)
        }),
        ("(1-z)^0.1", |m| Ok(binomial_series(0.1, m))),
        ("(1-z)^0.25", |m| Ok(binomial_series(0.25, m))),
        ("(1-z)^0.75", |m| Ok(binomial_series(0.75, m))),
        ("(1-z)^1", |m| Ok(binomial_series(1.0, m))),
        ("(1-z)^1.5", |m| Ok(binomial_series(1.5, m))),
    ];
    let mut agree = 0usize;
    let mut total = 0usize;
    let mut disagreements = Vec::new();
    for (label, zeros) in [("u=z", zero_lists[0]), ("Blaschke at 1/2", zero_lists[1])] {
        for (name, f_at) in &suite {
            let rep = ok(blaschke_equiv_check(1.0, zeros, *f_at, &res))?;
            total += 1;
            if rep.agree {
                agree += 1;
            } else {
                disagreements.push(format!("{name} under {label}"));
            }
        }
    }
    gate(
        agree == total,
        format!(
            "{agree}/{total} membership verdicts agree between H(b_1) and H(u b_1){}",
            if disagreements.is_empty() {
                String::new()
            } else {
                format!("; disagreements: {}", disagreements.join(", "))
            }
        ),
    )
}

fn c14_determinism() -> Outcome {
    let dir = std::path::Path::new(env!("CARGO_TARGET_TMPDIR"));
    let mut outputs = Vec::new();
    for run in 0..2 {
        let path = dir.join(format!("acceptance-check-all-{run}.json"));
        let out = Command::new(env!("CARGO_BIN_EXE_hb-lab"))
            .args(["check-all", "--seed", "7", "--out"])
            .arg(&path)
            .output()
            .map_err(|e| format!("spawn failed: {e}"))?;
        if !out.status.success() {
            return Err(format!(
                "check-all --seed 7 exited with {:?}: {}",
                out.status.code(),
                String::from_utf8_lossy(&out.stderr)
            ));
        }
        outputs.push(std::fs::read(&path).map_err(|e| format!("read failed: {e}"))?);
    }
    gate(
        outputs[0] == outputs[1],
        format!(
            "two runs of `check-all --seed 7` wrote byte-identical reports ({} bytes)",
            outputs[0].len()
        ),
    )
}
