//! The `drinfeld` binary: exact t-expansions of Drinfeld modular forms,
//! Hecke operators, A-expansion recovery, and a battery of mechanical
//! checks, over a single shared configuration layer.
//!
//! Exit status: 0 when the command succeeded and every expected verdict
//! matched, 2 when a check legitimately came out the unexpected way, and 1
//! for errors (bad flags, malformed documents, hypothesis violations, I/O).
//!
//! Deliverable documents go to stdout (or `--out`); the resolved
//! configuration header and error messages go to stderr.

mod commands;
mod config;
mod error;
mod spec;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::commands::CmdOutput;
use crate::config::OutputFormat;
use crate::error::CliError;

#[derive(Parser)]
#[command(
    name = "drinfeld",
    version,
    about = "Exact arithmetic for Drinfeld modular forms: t-expansions, Hecke operators, A-expansion recovery, and mechanical verification"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

/// Flags shared by every subcommand; a config file can supply defaults for
/// the field, precision, cache directory, and format.
#[derive(Args)]
pub struct GlobalArgs {
    /// Field size q = p^e; must be a prime power
    #[arg(long, global = true)]
    pub q: Option<u64>,
    /// Field characteristic (a prime); default 3
    #[arg(long, global = true)]
    pub p: Option<u64>,
    /// Extension degree over the prime field; default 1
    #[arg(long, global = true)]
    pub e: Option<u32>,
    /// Defining polynomial of the coefficient field in the symbol a,
    /// e.g. "a^2+a+1"
    #[arg(long, global = true)]
    pub modulus: Option<String>,
    /// Series precision: coefficients are tracked through t^PREC; default 60
    #[arg(long, global = true, value_name = "PREC")]
    pub prec: Option<usize>,
    /// Worker threads for parallel sections; default: all cores
    #[arg(long, global = true, value_name = "N")]
    pub jobs: Option<usize>,
    /// Directory for Goss-table and named-form series caches
    #[arg(long = "cache-dir", global = true, value_name = "DIR")]
    pub cache_dir: Option<PathBuf>,
    /// JSON config file supplying defaults for these flags
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Report rendering; series and A-expansion documents are always
    /// canonical JSON
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
    /// Write the output document to this file instead of stdout
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Expand a named form or an A-expansion document into a t-series document
    Expand(commands::ExpandArgs),
    /// Apply the Hecke operator at a monic prime to a series document
    Hecke(commands::HeckeArgs),
    /// Recover an A-expansion from a series document
    Recover(commands::RecoverArgs),
    /// Express a series in the g/h monomial basis of its weight and type
    Ghexpress(commands::GhexpressArgs),
    /// Mechanical checks: congruences, eigenvalues, products, power sums
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Scan index/weight/twist ranges for product identities
    Search(commands::SearchArgs),
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Twisted-family congruence ladder at every prime of a degree
    Congruence(commands::VCongruenceArgs),
    /// Congruence between two named forms modulo a polynomial power
    CongruencePair(commands::VCongruencePairArgs),
    /// Hecke eigenvalue of a named form at a prime
    Eigen(commands::VEigenArgs),
    /// One product identity between monomial coefficient families
    Product(commands::VProductArgs),
    /// Power-sum table S_{j,d} and the smallest vanishing degree bound
    Powersum(commands::VPowersumArgs),
    /// Whether (k, n) admits the single-family expansion
    Thm1(commands::VThm1Args),
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Expand(_) => "expand",
        Command::Hecke(_) => "hecke",
        Command::Recover(_) => "recover",
        Command::Ghexpress(_) => "ghexpress",
        Command::Verify(VerifyCommand::Congruence(_)) => "verify congruence",
        Command::Verify(VerifyCommand::CongruencePair(_)) => "verify congruence-pair",
        Command::Verify(VerifyCommand::Eigen(_)) => "verify eigen",
        Command::Verify(VerifyCommand::Product(_)) => "verify product",
        Command::Verify(VerifyCommand::Powersum(_)) => "verify powersum",
        Command::Verify(VerifyCommand::Thm1(_)) => "verify thm1",
        Command::Search(_) => "search",
    }
}

fn run(cli: &Cli) -> Result<CmdOutput, CliError> {
    let resolved = config::resolve(&cli.global)?;
    eprintln!("{}", config::header(&resolved, command_name(&cli.command)));
    if let Some(jobs) = resolved.jobs {
        // A second initialization in one process is harmless: the pool is
        // already sized, and determinism never depends on thread count.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    let out = match &cli.command {
        Command::Expand(a) => commands::expand(&resolved, a)?,
        Command::Hecke(a) => commands::hecke(&resolved, a)?,
        Command::Recover(a) => commands::recover(&resolved, a)?,
        Command::Ghexpress(a) => commands::ghexpress(&resolved, a)?,
        Command::Verify(VerifyCommand::Congruence(a)) => {
            commands::verify_congruence(&resolved, a)?
        }
        Command::Verify(VerifyCommand::CongruencePair(a)) => {
            commands::verify_congruence_pair(&resolved, a)?
        }
        Command::Verify(VerifyCommand::Eigen(a)) => commands::verify_eigen(&resolved, a)?,
        Command::Verify(VerifyCommand::Product(a)) => commands::verify_product(&resolved, a)?,
        Command::Verify(VerifyCommand::Powersum(a)) => {
            commands::verify_powersum(&resolved, a)?
        }
        Command::Verify(VerifyCommand::Thm1(a)) => commands::verify_thm1(&resolved, a)?,
        Command::Search(a) => commands::search(&resolved, a)?,
    };
    match &resolved.out {
        Some(path) => {
            std::fs::write(path, &out.stdout)
                .map_err(|e| CliError::Io { path: path.clone(), err: e.to_string() })?;
            Ok(CmdOutput { stdout: String::new(), ok: out.ok })
        }
        None => Ok(out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
