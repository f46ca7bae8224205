use anyhow::{anyhow, Result};
use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use tht_cli::config::{ExperimentConfig, SolverKind};
use tht_cli::{commands, experiment, logging};
use tht_core::phantoms::{PhantomFamily, PhantomSpec};

/// Finite and truncated Hilbert transform experiments on (-1, 1).
#[derive(Parser)]
#[command(name = "tht", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct ExperimentArgs {
    /// Configuration file (key = value sections); defaults to the reference
    /// truncation experiment when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory override.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Noise seed override.
    #[arg(long)]
    seed: Option<u64>,
    /// Iteration count override (extrapolation).
    #[arg(long)]
    iters: Option<usize>,
    /// Noise level override.
    #[arg(long)]
    sigma: Option<f64>,
    /// Series order override (minimize / lagrange).
    #[arg(long)]
    order: Option<usize>,
    /// Ridge regularisation override (minimize).
    #[arg(long)]
    ridge: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Apply the discrete forward transform to a source samples file.
    Forward { input: PathBuf, output: PathBuf },
    /// Apply the discrete inverse transform to a transform samples file.
    Invert { input: PathBuf, output: PathBuf },
    /// Emit a phantom pair sampled on the companion CGL grids.
    Phantom {
        /// semicircle_unit | semicircle_eps | semicircle_shifted
        #[arg(long, default_value = "semicircle_shifted")]
        family: String,
        #[arg(long, default_value_t = -0.1, allow_hyphen_values = true)]
        center: f64,
        #[arg(long, default_value_t = 0.8)]
        halfwidth: f64,
        #[arg(long, default_value_t = 0.5)]
        eps: f64,
        /// Grid size.
        #[arg(long, default_value_t = 256)]
        n: usize,
        #[arg(long, default_value_t = 0.0)]
        sigma: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Run the alternating extrapolation experiment.
    Extrapolate(ExperimentArgs),
    /// Run the least-squares estimation experiment.
    Minimize(ExperimentArgs),
    /// Run the interpolation-inversion experiment.
    Lagrange(ExperimentArgs),
    /// Check a sampled pair against the quadrature oracle.
    Validate {
        source: PathBuf,
        transform: PathBuf,
        /// Largest accepted deviation.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
}

fn load_config(args: &ExperimentArgs, kind: SolverKind) -> Result<ExperimentConfig> {
    let mut cfg = match &args.config {
        Some(path) => ExperimentConfig::parse(
            &std::fs::read_to_string(path)
                .map_err(|e| anyhow!("reading config {}: {e}", path.display()))?,
        )?,
        None => ExperimentConfig::default(),
    };
    cfg.solver = kind;
    if let Some(out) = &args.out {
        cfg.out_dir = out.clone();
    }
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if let Some(iters) = args.iters {
        cfg.iters = iters;
    }
    if let Some(sigma) = args.sigma {
        cfg.sigma = sigma;
    }
    if let Some(order) = args.order {
        cfg.order = order;
    }
    if let Some(ridge) = args.ridge {
        cfg.ridge = ridge;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn phantom_spec(family: &str, center: f64, halfwidth: f64, eps: f64) -> Result<PhantomSpec> {
    let family = match family {
        "semicircle_unit" => PhantomFamily::SemicircleUnit,
        "semicircle_eps" => PhantomFamily::SemicircleEps { eps },
        "semicircle_shifted" => PhantomFamily::SemicircleShifted { center, halfwidth },
        other => return Err(anyhow!("unknown phantom family `{other}`")),
    };
    Ok(PhantomSpec {
        family,
        noise: None,
    })
}

fn run() -> Result<ExitCode> {
    let cli = Cli::parse();
    match cli.command {
        Command::Forward { input, output } => {
            commands::forward(&input, &output)?;
        }
        Command::Invert { input, output } => {
            commands::invert(&input, &output)?;
        }
        Command::Phantom {
            family,
            center,
            halfwidth,
            eps,
            n,
            sigma,
            seed,
            out,
        } => {
            let spec = phantom_spec(&family, center, halfwidth, eps)?;
            commands::phantom(&spec, n, sigma, seed, &out)?;
        }
        Command::Extrapolate(args) => {
            let cfg = load_config(&args, SolverKind::Extrapolate)?;
            experiment::run_experiment(&cfg)?;
        }
        Command::Minimize(args) => {
            let cfg = load_config(&args, SolverKind::Minimize)?;
            experiment::run_experiment(&cfg)?;
        }
        Command::Lagrange(args) => {
            let cfg = load_config(&args, SolverKind::Lagrange)?;
            experiment::run_experiment(&cfg)?;
        }
        Command::Validate {
            source,
            transform,
            tol,
        } => {
            let deviation = commands::validate(&source, &transform)?;
            println!("max deviation {deviation:.6e} (tolerance {tol:.1e})");
            if deviation > tol {
                logging::error("pair failed oracle validation");
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(err) => {
            logging::error(&format!("{err:#}"));
            ExitCode::FAILURE
        }
    }
}
