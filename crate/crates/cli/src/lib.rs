//! The `omegalap` command line tool.
//!
//! Every subcommand prints a table on standard output and, with `--out FILE`,
//! writes the same result as JSON. Diagnostics go to standard error. Exit
//! status: 0 success, 1 verification failure, 2 invalid configuration,
//! 3 budget exceeded.

mod commands;
pub mod config;
pub mod error;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use omegalap::section::DEFAULT_EXP_BUDGET;

pub use error::{CliError, Exit};

#[derive(Debug, Parser)]
#[command(
    name = "omegalap",
    version,
    about = "Exact non-generation certificates for graph Laplacians on ω"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// The operator `alpha·Id + beta·Δ_G`.
#[derive(Debug, Args)]
struct OperatorArgs {
    /// Family name, inline JSON, or a JSON graph file.
    #[arg(long)]
    graph: String,
    /// uniform, normalized, inline JSON, or a JSON weights file.
    #[arg(long)]
    weights: Option<String>,
    /// Scalar field; by default the smallest one holding alpha and beta.
    #[arg(long, value_parser = ["rational", "gaussian"])]
    field: Option<String>,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    alpha: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    beta: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Emit a certificate file for a range of candidate depths m.
    Certify {
        #[command(flatten)]
        op: OperatorArgs,
        /// Depths as 1..8 (inclusive) or 1,2,5.
        #[arg(long, default_value = "1..8")]
        m: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check a certificate file from scratch.
    Verify { file: String },
    /// Reach sets of rows 1..n under powers up to each k_max.
    Scan {
        #[command(flatten)]
        op: OperatorArgs,
        #[arg(long, default_value_t = 1)]
        n: u64,
        #[arg(long = "k-max", default_value = "1,2,4,8,16")]
        k_max: String,
        /// Scan only the diagonal part D'.
        #[arg(long)]
        diagonal: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that rows 1..N are supported in U_n of their vertex.
    CheckHopping {
        #[command(flatten)]
        op: OperatorArgs,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long = "N", default_value_t = 200)]
        big_n: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// First row of the truncated exponential of the principal N×N section.
    Exp {
        #[command(flatten)]
        op: OperatorArgs,
        #[arg(long = "N")]
        big_n: usize,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        t: String,
        #[arg(long)]
        terms: usize,
        /// Cap on N·terms.
        #[arg(long, default_value_t = DEFAULT_EXP_BUDGET)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report loops, asymmetry, disconnection and range errors in a graph.
    Validate {
        #[arg(long)]
        graph: String,
        #[arg(long = "N", default_value_t = 100)]
        big_n: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Runs the tool on `argv` (program name first) against the process streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// Like [`run`], writing tables to `out` and diagnostics to `err`.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{e}");
                Exit::InvalidConfig
            } else {
                let _ = write!(out, "{e}");
                Exit::Success
            };
            return code as i32;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code as i32,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit() as i32
        }
    }
}

fn operator(op: &OperatorArgs) -> error::CliResult<config::OperatorConfig> {
    config::OperatorConfig::new(
        &op.graph,
        op.weights.as_deref(),
        op.field.as_deref(),
        &op.alpha,
        &op.beta,
    )
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> error::CliResult<Exit> {
    match command {
        Command::Certify { op, m, out: path } => {
            let m = config::parse_m_range(&m)?;
            commands::certify(&operator(&op)?, &m, path.as_deref(), out)
        }
        Command::Verify { file } => commands::verify(&file, out, err),
        Command::Scan {
            op,
            n,
            k_max,
            diagonal,
            out: path,
        } => {
            let k_max = config::parse_list("k-max", &k_max)?;
            commands::scan(&operator(&op)?, n, &k_max, diagonal, path.as_deref(), out)
        }
        Command::CheckHopping {
            op,
            n,
            big_n,
            out: path,
        } => commands::check_hopping(&operator(&op)?, n, big_n, path.as_deref(), out),
        Command::Exp {
            op,
            big_n,
            t,
            terms,
            budget,
            out: path,
        } => {
            let t = config::parse_scalar("t", &t)?;
            commands::exp(
                &operator(&op)?,
                big_n,
                &t,
                terms,
                budget,
                path.as_deref(),
                out,
                err,
            )
        }
        Command::Validate {
            graph,
            big_n,
            out: path,
        } => commands::validate(&graph, big_n, path.as_deref(), out),
    }
}
