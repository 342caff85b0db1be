//! `invset`: run the experiment harnesses and invariant suites from JSON configs.
//!
//! Exit codes: 0 success, 1 usage/IO/parse failure or failed check, 2 when the model
//! excludes the requested setting.

mod commands;
mod configs;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use invset::checks::{Suite, DEFAULT_SEED};

#[derive(Parser)]
#[command(name = "invset", version, about = "Exact finite-N bit-string experiments and invariant checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// CHSH sub-ensembles, S value and counterfactual exclusions.
    Chsh(Common),
    /// Mach-Zehnder which-way and interference arrangements.
    Mz(Common),
    /// PBR "not 01" probabilities and simultaneity verdict.
    Pbr(Common),
    /// Spinor evolution under the permutation operators.
    Dirac(Common),
    /// One constructed sample string; `--golden` checks the N = 4 table.
    Sample(Common),
    /// p-adic distances and Cantor intervals; `--golden` checks the d_2 examples.
    Padic(Common),
    /// Run an invariant suite and print a summary table.
    Check {
        #[arg(value_parser = parse_suite)]
        suite: Suite,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Clone, Debug)]
pub struct Common {
    /// JSON config; built-in defaults are used when absent.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Directory for reports and the run manifest.
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Both)]
    pub format: Format,
    /// Overrides the config's bit depth (for `check`, the largest N swept).
    #[arg(long)]
    pub n_bits: Option<u32>,
    /// RNG seed for the randomized checks.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Compare against the stored golden files instead of using a config.
    #[arg(long)]
    pub golden: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Both,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: invset::Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Chsh(c) => commands::chsh(&c),
        Command::Mz(c) => commands::mz(&c),
        Command::Pbr(c) => commands::pbr(&c),
        Command::Dirac(c) => commands::dirac(&c),
        Command::Sample(c) => commands::sample(&c),
        Command::Padic(c) => commands::padic(&c),
        Command::Check { suite, common } => commands::check(suite, &common),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
