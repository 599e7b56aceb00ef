use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use pbc_core::cli::{execute, Command, Invocation};

/// Exact numerical calculus for blowups of Poisson surfaces.
#[derive(Parser)]
#[command(name = "pbc", version)]
struct Args {
    command: Command,
    /// JSON configuration file.
    #[arg(long)]
    config: PathBuf,
    /// Name of a sheaf in the config.
    #[arg(long)]
    sheaf: Option<String>,
    /// Operation chain for `transform`, e.g. "minimal-lift; pseudo-twist-up f1".
    #[arg(long)]
    ops: Option<String>,
    /// Coefficient bound for the (-2)-class search.
    #[arg(long, allow_negative_numbers = true)]
    bound: Option<i64>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let config = match fs::read_to_string(&args.config) {
        Ok(text) => text,
        Err(e) => {
            eprintln!("pbc: cannot read {}: {e}", args.config.display());
            return ExitCode::from(2);
        }
    };
    let outcome = execute(&Invocation {
        command: args.command,
        config,
        sheaf: args.sheaf,
        ops: args.ops,
        bound: args.bound,
    });
    if let Some(msg) = &outcome.error {
        eprintln!("pbc: {msg}");
    }
    let written = match &args.out {
        Some(path) => fs::write(path, &outcome.output),
        None => std::io::stdout().write_all(outcome.output.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("pbc: cannot write report: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(outcome.exit_code as u8)
}
