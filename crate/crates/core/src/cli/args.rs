use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use super::{run, ModeSelection, ParamMode, RunConfig, Suite};

#[derive(Debug, Parser)]
#[command(name = "racah", version, about = "Exact verification of Racah algebra identities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run verification suites and report every identity check.
    Verify(VerifyArgs),
}

#[derive(Debug, clap::Args)]
pub struct VerifyArgs {
    /// Number of sites (at least 3).
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum)]
    pub mode: ModeSelection,
    #[arg(long, value_enum)]
    pub suite: Suite,
    #[arg(long, value_enum)]
    pub params: ParamMode,
    /// Seed for random parameter values.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Write the JSON report here.
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Write the substructure chain graph (DOT) here.
    #[arg(long)]
    pub dot: Option<PathBuf>,
    #[arg(long, env = "RACAH_THREADS", value_parser = clap::value_parser!(u32).range(1..))]
    pub threads: Option<u32>,
    /// Record per-check wall-clock time in the report.
    #[arg(long)]
    pub timings: bool,
}

impl From<VerifyArgs> for RunConfig {
    fn from(a: VerifyArgs) -> Self {
        RunConfig {
            n: a.n,
            mode: a.mode,
            suite: a.suite,
            params: a.params,
            seed: a.seed,
            json_path: a.json,
            dot_path: a.dot,
            threads: a.threads.map(|t| t as usize),
            timings: a.timings,
        }
    }
}

/// Parse `args`, run, print the summary, and return the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let Command::Verify(verify) = cli.command;
    match run(&verify.into()) {
        Ok(outcome) => {
            print!("{}", outcome.report);
            outcome.exit_code
        }
        Err(e) => {
            eprintln!("racah: {e}");
            e.exit_code()
        }
    }
}
