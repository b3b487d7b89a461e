//! `vortrans` command-line front end.

mod failure;
mod output;
mod scenario;
mod selection;
mod spectrum;

use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

use failure::Failure;

#[derive(Parser)]
#[command(name = "vortrans", version, about = "Selection rules and transition probabilities for trapped atoms in Laguerre-Gaussian beams")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Selection-rule table for a winding number.
    SelectionRules(selection::Args),
    /// CM transition probabilities versus the final energy number.
    CmSpectrum(spectrum::SpectrumArgs),
    /// CM transition probabilities over winding numbers and trap spreads.
    Scan(spectrum::ScanArgs),
    /// Full matrix elements for a JSON scenario.
    Evaluate {
        /// Scenario file (schema version "1").
        #[arg(long)]
        scenario: PathBuf,
        /// Write the JSON result here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Oracle cross-checks; exits 1 if any check fails.
    Verify {
        #[arg(long, default_value = "all", value_parser = ["all", "specfun", "harmonics", "angular", "radial", "lambda"])]
        suite: String,
        #[arg(long, default_value_t = vortrans::verify::DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::SelectionRules(args) => selection::run(&args),
        Command::CmSpectrum(args) => spectrum::run_spectrum(&args),
        Command::Scan(args) => spectrum::run_scan(&args),
        Command::Evaluate { scenario, output } => scenario::run(&scenario, output.as_deref()),
        Command::Verify { suite, seed, output } => {
            let suite = suite.parse().map_err(Failure::usage)?;
            let report = vortrans::verify::run_suite(suite, seed);
            output::write_json(&report, output.as_deref())?;
            if report.passed {
                Ok(())
            } else {
                let names: Vec<_> = report.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
                Err(Failure::numeric(anyhow::anyhow!("failed checks: {}", names.join(", "))))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
