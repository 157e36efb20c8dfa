use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use dbar_cli::{parse_weight, run, CliError, RunConfig, Subcommand};
use dbar_core::Scheme;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Command {
    VerifyIdentity,
    Solve,
    CheckH1,
    Sharpness,
    Moments,
    Diagonal,
    BargmannProbe,
    Curvature,
    UniquenessProbe,
    All,
}

impl From<Command> for Subcommand {
    fn from(c: Command) -> Self {
        match c {
            Command::VerifyIdentity => Subcommand::VerifyIdentity,
            Command::Solve => Subcommand::Solve,
            Command::CheckH1 => Subcommand::CheckH1,
            Command::Sharpness => Subcommand::Sharpness,
            Command::Moments => Subcommand::Moments,
            Command::Diagonal => Subcommand::Diagonal,
            Command::BargmannProbe => Subcommand::BargmannProbe,
            Command::Curvature => Subcommand::Curvature,
            Command::UniquenessProbe => Subcommand::UniquenessProbe,
            Command::All => Subcommand::All,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SchemeArg {
    Spectral,
    Fd4,
}

/// Verification pipelines for the weighted dbar-equation on the plane.
///
/// Exit status is 0 when every check passes, 1 when a check fails and 2 on
/// configuration or pipeline errors.
#[derive(Debug, Parser)]
#[command(name = "dbar", version)]
struct Args {
    #[arg(value_enum)]
    command: Command,
    /// JSON run configuration; flags below override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    grid_n: Option<usize>,
    #[arg(long)]
    grid_radius: Option<f64>,
    /// `fock:t=2`, `fock-plus-harmonic:b=0.125`, `cosh-x`, or a JSON object.
    #[arg(long)]
    weight: Option<String>,
    #[arg(long, value_enum)]
    scheme: Option<SchemeArg>,
    /// Output directory for reports.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format: json or csv.
    #[arg(long)]
    format: Option<String>,
    /// Run on one thread so reports are byte-reproducible.
    #[arg(long)]
    sequential: bool,
    #[arg(long)]
    seed: Option<u64>,
}

fn resolve(args: &Args) -> Result<RunConfig, CliError> {
    let mut cfg = match &args.config {
        Some(path) => RunConfig::from_path(path)?,
        None => RunConfig::default(),
    };
    if let Some(n) = args.grid_n {
        cfg.grid.n = n;
    }
    if let Some(r) = args.grid_radius {
        cfg.grid.radius = r;
    }
    if let Some(w) = &args.weight {
        cfg.weight = parse_weight(w)?;
    }
    if let Some(s) = args.scheme {
        cfg.scheme = match s {
            SchemeArg::Spectral => Scheme::Spectral,
            SchemeArg::Fd4 => Scheme::Fd4,
        };
    }
    if let Some(dir) = &args.out {
        cfg.output.dir = dir.clone();
    }
    if let Some(f) = &args.format {
        cfg.output.format = f.clone();
    }
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let args = Args::parse();
    let outcome = resolve(&args).and_then(|cfg| {
        let sub = Subcommand::from(args.command);
        if args.sequential {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(1)
                .build()
                .map_err(|e| CliError::InvalidArgument(format!("thread pool: {e}")))?;
            pool.install(|| run(&cfg, sub, true))
        } else {
            run(&cfg, sub, false)
        }
    });
    match outcome {
        Ok(result) => {
            for c in &result.checks {
                let tag = if c.passes { "PASS" } else { "FAIL" };
                let info = if c.informational {
                    " (informational)"
                } else {
                    ""
                };
                println!(
                    "[{tag}] {}{info}: measured {:e}, bound {:e}",
                    c.name, c.measured, c.bound
                );
            }
            println!("overall: {}", if result.overall { "pass" } else { "fail" });
            if result.overall {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
