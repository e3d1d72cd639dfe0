//! Command-line front end: construct, verify, search and simulate.
//!
//! [`run`] is the whole program minus process setup, so tests can drive it
//! with in-memory streams and inspect the exit code.

pub mod descriptor;
pub mod error;
mod search;
mod simulate;
mod verify;

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use lrc_forge::lrc::{self, VerifyConfig};
use lrc_forge::{ConstructionKind, LrcParams, Parallelism};

pub use descriptor::CodeDescriptor;
pub use error::{CliError, EXIT_BUDGET, EXIT_INPUT, EXIT_INTERNAL, EXIT_OK};
pub use simulate::{simulate, ContactStats, ErasureSpec, PathCounts, SimulationStats};

/// Environment variable overriding the rank-test cap of the distance search.
pub const BUDGET_ENV: &str = "LRC_FORGE_BUDGET";

#[derive(Debug, Parser)]
#[command(
    name = "lrc-forge",
    version,
    about = "Construct, verify and exercise optimal cyclic (r, δ) locally repairable codes"
)]
pub struct Cli {
    /// Run every search on the calling thread.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a code and print its descriptor.
    Construct(ConstructArgs),
    /// Recompute every recorded field of a descriptor.
    Verify(VerifyArgs),
    /// List parameter sets for which a construction applies.
    Search(SearchArgs),
    /// Encode random messages, erase symbols and repair them.
    Simulate(SimulateArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CodeArgs {
    #[arg(long)]
    pub q: u64,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub delta: usize,
    /// t1, t2, t3, remark3 or t4.
    #[arg(long)]
    pub kind: String,
    /// Target distance, required for remark3.
    #[arg(long)]
    pub d: Option<usize>,
}

impl CodeArgs {
    fn resolve(&self) -> Result<(LrcParams, ConstructionKind), CliError> {
        let kind = ConstructionKind::from_tag(&self.kind, self.d)?;
        Ok((LrcParams::new(self.q, self.n, self.r, self.delta), kind))
    }
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    /// Write the descriptor here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Descriptor file, or `-` for stdin.
    #[arg(long = "in", conflicts_with_all = ["q", "n", "r", "delta", "kind", "d"])]
    pub input: Option<String>,
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long)]
    pub delta: Option<usize>,
    #[arg(long)]
    pub kind: Option<String>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub q: u64,
    #[arg(long)]
    pub n_max: usize,
    /// `a`, `a-b` or `a..b` (inclusive); defaults to 2 through n-max.
    #[arg(long)]
    pub r_range: Option<String>,
    #[arg(long)]
    pub delta_range: Option<String>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Descriptor file, or `-` for stdin.
    #[arg(long = "in")]
    pub input: String,
    /// `local:w`, `global:w`, or a comma-separated list of coordinates.
    #[arg(long)]
    pub erasures: String,
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Run patterns beyond the code's guaranteed capability and report failures.
    #[arg(long)]
    pub allow_failures: bool,
}

/// Shared settings derived from global flags and the environment.
#[derive(Debug, Clone, Copy)]
pub struct Settings {
    pub parallelism: Parallelism,
    pub verify: VerifyConfig,
}

impl Settings {
    fn from_cli(cli: &Cli) -> Result<Self, CliError> {
        let parallelism = if cli.sequential {
            Parallelism::Sequential
        } else {
            Parallelism::Parallel
        };
        let mut verify = VerifyConfig {
            parallelism,
            ..VerifyConfig::default()
        };
        if let Ok(raw) = std::env::var(BUDGET_ENV) {
            verify.rank_test_cap = raw.trim().parse().map_err(|_| {
                CliError::BadInput(format!(
                    "{BUDGET_ENV} must be a non-negative integer, got '{raw}'"
                ))
            })?;
        }
        Ok(Settings {
            parallelism,
            verify,
        })
    }
}

/// Reads a file, or stdin for `-`.
fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Internal(format!("reading stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| CliError::BadInput(format!("cannot read {path}: {e}")))
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    writeln!(out, "{text}").map_err(|e| CliError::Internal(format!("writing output: {e}")))
}

pub fn construct_descriptor(
    code: &CodeArgs,
    settings: &Settings,
) -> Result<CodeDescriptor, CliError> {
    let (params, kind) = code.resolve()?;
    let report = lrc::verify(&params, kind, &settings.verify)?;
    CodeDescriptor::from_report(&report)
}

fn cmd_construct(
    args: &ConstructArgs,
    settings: &Settings,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let desc = construct_descriptor(&args.code, settings)?;
    let text = desc.to_json_string();
    match &args.out {
        Some(path) => std::fs::write(path, text + "\n")
            .map_err(|e| CliError::Internal(format!("cannot write {}: {e}", path.display()))),
        None => emit(out, &text),
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let settings = Settings::from_cli(cli)?;
    match &cli.command {
        Command::Construct(a) => cmd_construct(a, &settings, out),
        Command::Verify(a) => verify::cmd_verify(a, &settings, out),
        Command::Search(a) => search::cmd_search(a, out),
        Command::Simulate(a) => simulate::cmd_simulate(a, &settings, out),
    }
}

/// Parses `args` (program name first) and runs the command. Returns the
/// process exit code: 0 success, 1 internal error, 2 bad input or a failed
/// precondition or check, 3 budget or capability exceeded.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
