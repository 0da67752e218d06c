//! `conformal-hodge`: projections, decompositions, Hodge classification and conformal
//! dynamics from the command line.
//!
//! Exit codes: 0 success, 1 self-test failure, 2 input or parse error, 3 numerical
//! failure, 4 domain not supported by the subcommand.

mod commands;
mod expr;
mod failure;
mod output;
mod settings;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::failure::Failure;

#[derive(Debug, Parser)]
#[command(name = "conformal-hodge", version, about = "Spectral calculus for conformal vector fields on planar domains")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Project a field onto the conformal fields of the domain.
    Project(CommonArgs),
    /// Orthogonal decomposition of a disk field with its Dirichlet multipliers.
    Decompose {
        #[command(flatten)]
        common: CommonArgs,
        /// conformal, helmholtz or symplectic.
        #[arg(long, default_value = "conformal")]
        kind: String,
    },
    /// Apply the adjoint of the complex derivative to a conformal field.
    Adjoint(CommonArgs),
    /// Hodge component labels and coordinates of a field read as a 1-form.
    Classify(CommonArgs),
    /// Print the dimensions of the six Hodge subspaces for a model domain.
    Catalog(CommonArgs),
    /// Newton solve of the stationary conformal problem.
    Stationary {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        dynamics: DynamicsArgs,
        /// Newton iteration cap.
        #[arg(long, default_value_t = 50)]
        max_iter: usize,
    },
    /// Leapfrog integration of the conformal wave equation on the disk.
    Wave {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        dynamics: DynamicsArgs,
    },
    /// RK4 integration of the geodesic flow of conformal embeddings.
    Geodesic {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        dynamics: DynamicsArgs,
        /// Truncation degree of pulled-back series [default: 2 x degree].
        #[arg(long)]
        work_degree: Option<usize>,
        /// Abort when min |phi'| drops below this value.
        #[arg(long, default_value_t = 1e-3)]
        min_deriv_floor: f64,
    },
    /// Run the built-in oracle suite and print a pass/fail matrix.
    Check {
        /// Bergman quadrature as RADIALxANGULAR.
        #[arg(long, default_value = "64x128")]
        quadrature: String,
        /// Fault injection: shift the disk moment denominator by this amount.
        #[arg(long, default_value_t = 0.0, hide = true)]
        inject_moment_perturbation: f64,
    },
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// disk | map:<json-path> | annulus:<r_in> | torus | sphere (catalog only).
    #[arg(long, default_value = "disk")]
    pub domain: String,
    /// Input JSON file.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    /// Output file; JSON commands print to stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Series degree budget, 1..=64 [default: 16].
    #[arg(long)]
    pub degree: Option<usize>,
    /// Tolerance for verdicts, holomorphy checks and convergence [default: 1e-10].
    #[arg(long)]
    pub tol: Option<f64>,
    /// Conformal map JSON, equivalent to `--domain map:<path>`.
    #[arg(long)]
    pub map: Option<PathBuf>,
    /// Inner radius of the annulus, equivalent to `--domain annulus:<r_in>`.
    #[arg(long)]
    pub r_in: Option<f64>,
    /// JSON file with any of {dt, steps, sample_stride, degree, tol}; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct DynamicsArgs {
    /// Time step [default: 1e-3].
    #[arg(long)]
    pub dt: Option<f64>,
    /// Number of steps [default: 10000 for wave, 1000 for geodesic].
    #[arg(long)]
    pub steps: Option<usize>,
    /// Record every n-th step [default: 100 for wave, 10 for geodesic].
    #[arg(long)]
    pub sample_stride: Option<usize>,
    /// Quadratic potential V = c|z|^2/2.
    #[arg(long, conflicts_with = "potential", allow_negative_numbers = true)]
    pub c: Option<f64>,
    /// Polynomial potential V as a real field JSON.
    #[arg(long)]
    pub potential: Option<PathBuf>,
    /// Initial field: an expression such as `z` or `0.1 + 0.2i*z^2`, or a field JSON path.
    #[arg(long, allow_hyphen_values = true)]
    pub xi0: Option<String>,
    /// Initial velocity of the wave, same syntax as --xi0 [default: 0].
    #[arg(long, allow_hyphen_values = true)]
    pub xidot0: Option<String>,
    /// Also run at dt/2 and dt/4 and report the observed convergence order.
    #[arg(long)]
    pub halve_dt: bool,
    /// Summary JSON path [default: <out>.summary.json, or stderr without --out].
    #[arg(long)]
    pub summary: Option<PathBuf>,
}

fn init_threads() -> Result<(), Failure> {
    if let Ok(v) = std::env::var("CONFORMAL_HODGE_THREADS") {
        let n: usize = v
            .parse()
            .map_err(|_| Failure::input(format!("CONFORMAL_HODGE_THREADS must be a positive integer, got '{v}'")))?;
        if n == 0 {
            return Err(Failure::input("CONFORMAL_HODGE_THREADS must be positive"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::input(format!("thread pool: {e}")))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = init_threads().and_then(|_| commands::run(cli.command));
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.exit_code() as u8)
        }
    }
}
