//! `eikonal` — construct closed-form defect solutions of the complex eikonal
//! equation, certify their PDE identities, and compute their topology.

mod config;
mod runner;

use clap::{Args, Parser, Subcommand};
use config::{JobConfig, TaskConfig};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "eikonal", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Job configuration file (JSON).
    config: PathBuf,
    /// Output directory; overrides the config's `output` field.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Sampling seed; overrides the config's `seed` field.
    #[arg(long)]
    seed: Option<u64>,
    /// Suppress per-task progress lines.
    #[arg(long)]
    quiet: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run all configured tasks and write reports.
    Run(CommonArgs),
    /// Parse the config and check all invariants without running tasks.
    Validate(CommonArgs),
    /// Run only the sample_grid tasks of the config.
    Sample(CommonArgs),
}

fn load(args: &CommonArgs) -> Result<JobConfig, String> {
    let mut config = JobConfig::load(&args.config)?;
    if let Some(output) = &args.output {
        config.output = output.clone();
    }
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    // Identity applicability depends on the spec family, so it is checked
    // here rather than inside the per-task validation.
    for (i, task) in config.tasks.iter().enumerate() {
        if let TaskConfig::Verify { identities, .. } = task {
            for &identity in identities {
                runner::check_identity_applicable(&config.spec, identity)
                    .map_err(|e| format!("{}: field tasks[{i}]: {e}", args.config.display()))?;
            }
        }
    }
    Ok(config)
}

fn configure_threads() -> Result<(), String> {
    match std::env::var("EIKONAL_THREADS") {
        Err(_) => Ok(()),
        Ok(raw) => {
            let n: usize = raw
                .parse()
                .map_err(|_| format!("EIKONAL_THREADS must be a non-negative integer, got {raw:?}"))?;
            if n == 0 {
                return Ok(()); // 0 = auto
            }
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
                .map_err(|e| format!("cannot configure thread pool: {e}"))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    let (args, mode) = match &cli.command {
        Command::Run(a) => (a, "run"),
        Command::Validate(a) => (a, "validate"),
        Command::Sample(a) => (a, "sample"),
    };
    let config = match load(args) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    if mode == "validate" {
        if !args.quiet {
            println!("{}: ok", args.config.display());
        }
        return ExitCode::SUCCESS;
    }
    match runner::run_job(&config, args.quiet, mode == "sample") {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
