//! Command-line front end: instance generation, decoding runs, sweeps,
//! benchmarks, and claim verification suites.

mod channel;
mod cmd_bench;
mod cmd_decode;
mod cmd_gen;
mod cmd_sweep;
mod cmd_verify;
mod report;
mod specs;

use clap::{Parser, Subcommand, ValueEnum};
use listdec_core::Error;

pub const EXIT_USAGE: i32 = 1;
pub const EXIT_SOUNDNESS: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleArg {
    Exact,
    Heuristic,
}

#[derive(Debug, Parser)]
#[command(name = "listdec", version, about = "List decoding of expander codes via cut decompositions")]
pub struct Cli {
    /// RNG seed for all randomized steps.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Decomposition precision; defaults to the flavor-specific value.
    #[arg(long, global = true)]
    pub gamma: Option<f64>,
    /// List-decoding slack.
    #[arg(long, global = true, default_value_t = 0.25)]
    pub epsilon: f64,
    /// Local candidate-list size; defaults per subcommand.
    #[arg(long, global = true)]
    pub ell: Option<usize>,
    /// Cut-norm oracle used inside the regularity decomposition.
    #[arg(long, global = true, value_enum, default_value_t = OracleArg::Exact)]
    pub oracle: OracleArg,
    /// Cap on terms per decomposition; defaults to ceil(64 / gamma^2).
    #[arg(long = "max-p", global = true)]
    pub max_p: Option<usize>,
    /// Cap on enumerated measurable assignments.
    #[arg(long = "enum-cap", global = true, default_value_t = 1u128 << 24)]
    pub enum_cap: u128,
    /// Write the structured report to this path instead of stdout.
    #[arg(long = "json-out", global = true)]
    pub json_out: Option<String>,
    /// Dump every cut decomposition to this path.
    #[arg(long = "dump-decomposition", global = true)]
    pub dump_decomposition: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate graph/code files and print measured parameters.
    Gen(cmd_gen::GenArgs),
    /// Encode, corrupt, list-decode, and report.
    Decode(cmd_decode::DecodeArgs),
    /// Sweep corruption levels and emit per-point CSV.
    Sweep(cmd_sweep::SweepArgs),
    /// Time decoding at a range of block lengths and report scaling ratios.
    Bench(cmd_bench::BenchArgs),
    /// Run the oracle and claim suites.
    Verify(cmd_verify::VerifyArgs),
}

/// Maps library errors onto the documented exit codes.
fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::CapExceeded { .. } => EXIT_RESOURCE,
        _ => EXIT_USAGE,
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are successful outputs, not usage errors.
            let benign = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            e.print().ok();
            std::process::exit(if benign { 0 } else { EXIT_USAGE });
        }
    };
    let result = match &cli.command {
        Command::Gen(args) => cmd_gen::run(&cli, args),
        Command::Decode(args) => cmd_decode::run(&cli, args),
        Command::Sweep(args) => cmd_sweep::run(&cli, args),
        Command::Bench(args) => cmd_bench::run(&cli, args),
        Command::Verify(args) => cmd_verify::run(&cli, args),
    };
    match result {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(exit_code_for(&e));
        }
    }
}
