use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mbi_cli::verify::AlgebraJson;
use mbi_cli::{decay_report, simulate, verify_algebra, with_workers, CliError, Mutation, RunConfig};

#[derive(Parser)]
#[command(name = "mbi", version, about = "Maxwell-Born-Infeld simulation and verification kit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MutationArg {
    DualSign,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve the configured initial data and write series, snapshots and a summary.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        /// Output directory; overrides `output.dir` in the configuration.
        #[arg(long)]
        run_dir: Option<PathBuf>,
    },
    /// Check every pointwise identity on random samples and print a JSON report.
    VerifyAlgebra {
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        tolerance: Option<f64>,
        /// Run the suite against a deliberately broken implementation.
        #[arg(long, value_enum, hide = true)]
        mutate: Option<MutationArg>,
    },
    /// Fit decay exponents of a finished run.
    DecayReport {
        #[arg(long)]
        run: PathBuf,
        /// A second run whose exponents are compared with this one.
        #[arg(long)]
        reference: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Simulate { config, run_dir } => {
            let config = RunConfig::load(&config)?;
            let dir = run_dir
                .or_else(|| config.output.dir.clone())
                .ok_or_else(|| CliError::Config("no run directory: pass --run-dir or set output.dir".into()))?;
            let summary = with_workers(|| simulate(&config, &dir))?;
            println!("{}", serde_json::to_string_pretty(&summary)?);
            Ok(())
        }
        Command::VerifyAlgebra { samples, seed, tolerance, mutate } => {
            if samples == 0 {
                return Err(CliError::Config("--samples must be at least 1".into()));
            }
            let mutation = mutate.map(|MutationArg::DualSign| Mutation::DualSign);
            let report = with_workers(|| Ok(verify_algebra(samples, seed, tolerance, mutation)))?;
            println!("{}", serde_json::to_string_pretty(&AlgebraJson::from(&report))?);
            if report.all_passed() {
                Ok(())
            } else {
                Err(CliError::PropertyFailure(report.failures().iter().map(|s| s.to_string()).collect()))
            }
        }
        Command::DecayReport { run, reference } => {
            let report = decay_report(&run, reference.as_deref())?;
            println!("{}", serde_json::to_string_pretty(&report)?);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
