use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use hochhom::cli::{execute, parse_config, JobConfig, EXIT_INPUT};

/// Exact higher Hochschild homology of commutative algebras over
/// simplicial sets.
///
/// Exit status: 0 success, 1 suite failure, 2 input or hypothesis error,
/// 3 size budget exceeded.
#[derive(Parser)]
#[command(name = "hochhom", version, args_conflicts_with_subcommands = true)]
struct Cli {
    /// Path to a JSON job config.
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named verification suite.
    Verify {
        suite: String,
        #[arg(long, default_value = "default")]
        corpus: String,
        /// Maximum basis elements per complex (overridden by HOCHHOM_BUDGET).
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long, value_parser = ["json", "text"], default_value = "json")]
        format: String,
        /// Write the report here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match (cli.command, cli.config) {
        (Some(Command::Verify { suite, corpus, budget, format, output }), _) => {
            let mut doc = serde_json::json!({ "command": "verify", "suite": suite, "corpus": corpus, "format": format });
            if let Some(b) = budget {
                doc["budget"] = b.into();
            }
            match parse_config(&doc.to_string()) {
                Ok(mut c) => {
                    c.output = output;
                    Ok(c)
                }
                Err(e) => Err(e),
            }
        }
        (None, Some(path)) => match std::fs::read_to_string(&path) {
            Ok(text) => parse_config(&text),
            Err(e) => {
                eprintln!("error: cannot read {}: {e}", path.display());
                return ExitCode::from(EXIT_INPUT as u8);
            }
        },
        (None, None) => {
            eprintln!("usage: hochhom <config.json> | hochhom verify <suite> [--corpus default]");
            return ExitCode::from(EXIT_INPUT as u8);
        }
    };
    let config: JobConfig = match config {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    ExitCode::from(execute(&config) as u8)
}
