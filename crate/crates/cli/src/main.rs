mod cli;
mod commands;
mod error;
mod input;

use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use serde_json::{json, Value};

use crate::cli::{Cli, Command};
use crate::error::CliError;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(&CliError::Usage(first_line(&e.to_string()))),
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => fail(&e),
    }
}

fn first_line(s: &str) -> String {
    s.lines()
        .next()
        .unwrap_or_default()
        .trim_start_matches("error: ")
        .to_string()
}

fn fail(e: &CliError) -> ExitCode {
    let line = json!({ "error": e.code(), "message": e.to_string() });
    eprintln!("{line}");
    ExitCode::from(e.exit_code() as u8)
}

fn run(cli: &Cli) -> Result<u8, CliError> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let seed = commands::resolve_seed(&cli.seed)?;
    match &cli.command {
        Command::Compute(args) => emit(cli, &commands::compute(args, seed)?)?,
        Command::Test(args) => emit(cli, &commands::test(args, seed)?)?,
        Command::Simulate(args) => {
            let out = commands::simulate(args, seed)?;
            if let (Some(path), Some(bytes)) = (&args.csv, &out.csv) {
                fs::write(path, bytes).map_err(|e| CliError::Io(format!("{path}: {e}")))?;
            }
            emit(cli, &out.doc)?
        }
        Command::Bench(args) => emit(cli, &commands::bench(args, seed)?)?,
        Command::Verify(args) => {
            let (doc, passed) = commands::verify(args, seed)?;
            emit(cli, &doc)?;
            if !passed {
                let failing: Vec<&Value> = doc["result"]["sweeps"]
                    .as_array()
                    .map(|s| s.iter().filter(|s| s["passed"] == false).collect())
                    .unwrap_or_default();
                let names: Vec<&str> = failing.iter().filter_map(|s| s["name"].as_str()).collect();
                let detail = failing
                    .first()
                    .map(|s| s["counterexample"].to_string())
                    .unwrap_or_default();
                return Err(CliError::Verification(format!(
                    "sweeps failed: {}; first counterexample: {detail}",
                    names.join(", ")
                )));
            }
        }
    }
    Ok(0)
}

fn emit(cli: &Cli, doc: &Value) -> Result<(), CliError> {
    let mut text = if cli.compact {
        serde_json::to_string(doc)
    } else {
        serde_json::to_string_pretty(doc)
    }
    .map_err(|e| CliError::Io(e.to_string()))?;
    text.push('\n');
    match &cli.output {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Io(format!("{path}: {e}")))?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}
