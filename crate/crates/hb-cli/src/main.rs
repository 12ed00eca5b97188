//! `hb-lab`: command-line laboratory for the de Branges–Rovnyak spaces
//! `H(b_alpha)` built from the Pythagorean pairs with `b/a = (1-z)^(-alpha)`.
//!
//! Exit codes: 0 success, 1 a requested check failed, 2 usage error
//! (arguments, function spec, I/O), 3 numerical instability.

mod checks;
mod commands;
mod emit;
mod failure;
mod fspec;

use clap::{Args, Parser, Subcommand};
use commands::CommandOutput;
use emit::Format;
use failure::Failure;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "hb-lab",
    version,
    about = "Numerical laboratory for de Branges-Rovnyak spaces H(b_alpha)",
    long_about = "Numerical laboratory for the de Branges-Rovnyak spaces H(b_alpha) whose \
Pythagorean mate satisfies b/a = (1-z)^(-alpha).  Reports are deterministic: \
a fixed command line (and seed) reproduces the output byte for byte.\n\n\
Exit codes: 0 success, 1 a requested check failed, 2 usage error, 3 numerical \
instability.  Set HB_LAB_THREADS to cap worker threads."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct the pair (a_alpha, b_alpha) and report its diagnostics
    #[command(after_help = "CSV columns: alpha,pyth_residual,corona_min,corona_floor,\
phi_consistency,b_at_one_re,b_at_one_im,b_at_one_error,b_at_one_stable,arg_b_max,\
sandwich_points,sandwich_all_within (one row per alpha).")]
    Pair(PairArgs),
    /// H(b_alpha) norm and membership sweep for a function
    #[command(after_help = "CSV columns: alpha,f,resolution,sweep_norm,hb_norm,h2_norm,\
verdict,growth_exponent (one row per resolution).")]
    Norm(NormArgs),
    /// Split a member of H(b_alpha) into polynomial, divisible, and defect parts
    #[command(after_help = "CSV columns: alpha,f,mode,part,index,re,im,residual_norm \
(one row per reported coefficient).")]
    Decompose(DecomposeArgs),
    /// Singular spectra and kernel estimates of the rigidity Toeplitz sections
    #[command(after_help = "CSV columns: record,alpha,dim,sigma_min,kernel_dim,gap_ratio,\
trusted,max_candidate_residual (record is \"sigma\" or \"kernel\").")]
    Spectral(SpectralArgs),
    /// Cutoff sweep of the boundary regularity integral with verdicts
    #[command(after_help = "CSV columns: alpha,n,cutoff,value,fitted_exponent,tail_slope,\
slope_drift,verdict (one row per cutoff).")]
    Regularity(RegularityArgs),
    /// Run the full battery of invariant checks
    #[command(name = "check-all", after_help = "CSV columns: name,passed,detail \
(one row per check).")]
    CheckAll(CheckAllArgs),
}

#[derive(Args)]
struct OutputArgs {
    /// Write the report to this file instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Report format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct PairArgs {
    /// Exponent(s) alpha > 0, comma separated or repeated
    #[arg(
        long = "alpha",
        value_name = "ALPHA",
        required = true,
        value_delimiter = ',',
        allow_negative_numbers = true
    )]
    alphas: Vec<f64>,
    /// Boundary grid size
    #[arg(long, default_value_t = 4096)]
    n_points: usize,
    /// Taylor window length of the projected pair [default: n-points/4]
    #[arg(long)]
    degree: Option<usize>,
    /// Seed for the random interior sandwich points
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Tolerance for the boundary Pythagorean residual
    #[arg(long = "tol-pyth", default_value_t = 1e-8)]
    tol_pyth: f64,
    /// Tolerance for the radial-limit error |b(1) - 1|
    #[arg(long = "tol-lim", default_value_t = 1e-3)]
    tol_lim: f64,
    /// Number of random interior points for the modulus sandwich
    #[arg(long, default_value_t = 12)]
    sandwich_points: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct NormArgs {
    /// Exponent alpha > 0
    #[arg(long, allow_negative_numbers = true)]
    alpha: f64,
    /// Function to probe, e.g. "1", "z^2", "(1-z)^1.5*(1+2*z)"
    #[arg(long)]
    f: String,
    /// Boundary grid size
    #[arg(long, default_value_t = 4096)]
    n_points: usize,
    /// Taylor window length of the projected pair [default: n-points/4]
    #[arg(long)]
    degree: Option<usize>,
    /// Coefficient-window resolutions for the membership sweep
    #[arg(long, value_delimiter = ',', default_values_t = [256usize, 512, 1024, 2048])]
    resolutions: Vec<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct DecomposeArgs {
    /// Exponent alpha > 0
    #[arg(long, allow_negative_numbers = true)]
    alpha: f64,
    /// Function to decompose, e.g. "z^2", "(1-z)^1.3*(1+z)"
    #[arg(long)]
    f: String,
    /// Boundary grid size
    #[arg(long, default_value_t = 4096)]
    n_points: usize,
    /// Working coefficient-window length
    #[arg(long, default_value_t = 1024)]
    degree: usize,
    /// Tolerance for the reconstruction residual
    #[arg(long = "tol-dec", default_value_t = 1e-6)]
    tol_dec: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SpectralArgs {
    /// Exponent(s) alpha > 0, comma separated or repeated
    #[arg(
        long = "alpha",
        value_name = "ALPHA",
        required = true,
        value_delimiter = ',',
        allow_negative_numbers = true
    )]
    alphas: Vec<f64>,
    /// Section dimensions, strictly increasing
    #[arg(long, value_delimiter = ',', default_values_t = [64usize, 128, 256, 512, 1024])]
    resolutions: Vec<usize>,
    /// Singular values below this count toward the kernel dimension
    #[arg(long = "tol-kernel", default_value_t = 1e-6)]
    tol_kernel: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct RegularityArgs {
    /// Exponent(s) alpha > 0, comma separated or repeated
    #[arg(
        long = "alpha",
        value_name = "ALPHA",
        required = true,
        value_delimiter = ',',
        allow_negative_numbers = true
    )]
    alphas: Vec<f64>,
    /// Derivative orders n >= 1
    #[arg(long, value_delimiter = ',', default_values_t = [1usize])]
    orders: Vec<usize>,
    /// Cutoffs (strictly decreasing, in (0, pi)) [default: 2^-4 .. 2^-14]
    #[arg(long, value_delimiter = ',')]
    cutoffs: Option<Vec<f64>>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct CheckAllArgs {
    /// Seed for the randomized check items
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: OutputArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("hb-lab: {}", failure.message());
            ExitCode::from(failure.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    configure_threads()?;
    let (output_args, result) = dispatch(cli.command)?;
    write_output(&output_args, &result.bytes)?;
    match result.failed {
        Some(message) => Err(Failure::Check(message)),
        None => Ok(()),
    }
}

fn dispatch(command: Command) -> Result<(OutputArgs, CommandOutput), Failure> {
    match command {
        Command::Pair(args) => {
            require_positive_alphas(&args.alphas)?;
            let out = commands::pair(
                &args.alphas,
                args.n_points,
                args.degree,
                args.seed,
                args.tol_pyth,
                args.tol_lim,
                args.sandwich_points,
                args.output.format,
            )?;
            Ok((args.output, out))
        }
        Command::Norm(args) => {
            require_positive_alphas(&[args.alpha])?;
            let out = commands::norm(
                args.alpha,
                &args.f,
                args.n_points,
                args.degree,
                &args.resolutions,
                args.output.format,
            )?;
            Ok((args.output, out))
        }
        Command::Decompose(args) => {
            require_positive_alphas(&[args.alpha])?;
            let out = commands::decompose_cmd(
                args.alpha,
                &args.f,
                args.n_points,
                args.degree,
                args.tol_dec,
                args.output.format,
            )?;
            Ok((args.output, out))
        }
        Command::Spectral(args) => {
            require_positive_alphas(&args.alphas)?;
            let out = commands::spectral(
                &args.alphas,
                &args.resolutions,
                args.tol_kernel,
                args.output.format,
            )?;
            Ok((args.output, out))
        }
        Command::Regularity(args) => {
            require_positive_alphas(&args.alphas)?;
            let out = commands::regularity_cmd(
                &args.alphas,
                &args.orders,
                args.cutoffs.as_deref(),
                args.output.format,
            )?;
            Ok((args.output, out))
        }
        Command::CheckAll(args) => {
            let out = checks::check_all(args.seed, args.output.format)?;
            Ok((args.output, out))
        }
    }
}

fn require_positive_alphas(alphas: &[f64]) -> Result<(), Failure> {
    if alphas.is_empty() {
        return Err(Failure::Usage("need at least one alpha".to_string()));
    }
    if alphas.iter().any(|a| !a.is_finite() || *a <= 0.0) {
        return Err(Failure::Usage("alpha must be strictly positive".to_string()));
    }
    Ok(())
}

/// Applies the `HB_LAB_THREADS` cap to the global worker pool.
fn configure_threads() -> Result<(), Failure> {
    let value = match std::env::var("HB_LAB_THREADS") {
        Ok(v) => v,
        Err(std::env::VarError::NotPresent) => return Ok(()),
        Err(e) => return Err(Failure::Usage(format!("HB_LAB_THREADS: {e}"))),
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| {
            Failure::Usage(format!(
                "HB_LAB_THREADS must be a positive integer, got {value:?}"
            ))
        })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Usage(format!("cannot configure thread pool: {e}")))
}

fn write_output(args: &OutputArgs, bytes: &[u8]) -> Result<(), Failure> {
    match &args.out {
        Some(path) => std::fs::write(path, bytes)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(bytes)
            .map_err(|e| Failure::Usage(format!("cannot write to stdout: {e}"))),
    }
}
