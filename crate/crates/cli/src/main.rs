mod commands;
mod descriptor;
mod error;
mod pretty;
mod suite;

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::descriptor::Descriptor;
use crate::error::CliError;

/// Induction data, R-groups and 2-cocycles for affine Hecke algebras.
///
/// Each subcommand reads a JSON descriptor from FILE (or stdin) and prints a
/// JSON report.
#[derive(Parser)]
#[command(name = "hecke-rgroup", version)]
struct Cli {
    /// Run the acceptance battery and report one line per check.
    #[arg(long, global = true)]
    suite: bool,
    /// Print a text rendering instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Add wall-clock timings to the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Clone)]
enum Command {
    /// Roots, coroots, labels, R_nr, fundamental group and K_P orders.
    Rootdatum(Input),
    /// Objects, arrows and gallery factorizations of the Weyl groupoid.
    Groupoid(Input),
    /// The groups K_P.
    Kp(Input),
    /// Isotropy group, mirrors, W^m and the R-group of one induction datum.
    Rgroup(Input),
    /// Finite groups, 2-cocycles and twisted group algebras.
    Cocycle(Input),
    /// Knapp-Stein decomposition of one datum or of a scan of the torus.
    Decompose(Input),
}

#[derive(clap::Args, Clone)]
struct Input {
    #[arg(value_name = "FILE")]
    file: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (report, code) = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            (e.to_json(), e.exit_code())
        }
    };
    let text = if cli.pretty {
        pretty::render(&report)
    } else {
        serde_json::to_string_pretty(&report).expect("serializable") + "\n"
    };
    // A closed pipe downstream is not our failure.
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
    ExitCode::from(code as u8)
}

fn read_input(file: Option<&PathBuf>) -> Result<String, CliError> {
    Ok(match file.filter(|p| p.as_os_str() != "-") {
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            s
        }
        Some(path) => std::fs::read_to_string(path)?,
    })
}

fn run(cli: &Cli) -> Result<(Value, i32), CliError> {
    let start = Instant::now();
    let mut code = 0;
    let mut report = serde_json::Map::new();
    report.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    if let Some(cmd) = &cli.command {
        let (name, input) = match cmd {
            Command::Rootdatum(i) => ("rootdatum", i),
            Command::Groupoid(i) => ("groupoid", i),
            Command::Kp(i) => ("kp", i),
            Command::Rgroup(i) => ("rgroup", i),
            Command::Cocycle(i) => ("cocycle", i),
            Command::Decompose(i) => ("decompose", i),
        };
        let text = read_input(input.file.as_ref())?;
        let d: Descriptor = descriptor::parse(&text)?;
        let results = match cmd {
            Command::Rootdatum(_) => commands::rootdatum(&d)?,
            Command::Groupoid(_) => commands::groupoid(&d)?,
            Command::Kp(_) => commands::kp(&d)?,
            Command::Rgroup(_) => commands::rgroup(&d)?,
            Command::Decompose(_) => commands::decompose(&d)?,
            Command::Cocycle(_) => {
                let (v, passed) = commands::cocycle(&d)?;
                if !passed {
                    code = 4;
                }
                v
            }
        };
        report.insert("command".into(), json!(name));
        report.insert(
            "descriptor".into(),
            serde_json::from_str(&text).expect("already parsed"),
        );
        report.insert("results".into(), results);
    }
    if cli.suite {
        let outcomes = suite::all_checks();
        for o in &outcomes {
            let tag = if o.passed { "PASS" } else { "FAIL" };
            eprintln!("[{tag}] {:>2} {}: {}", o.id, o.name, o.detail);
        }
        if outcomes.iter().any(|o| !o.passed) {
            code = 4;
        }
        report.insert("suite".into(), suite::to_json(&outcomes, cli.timing));
    }
    if cli.command.is_none() && !cli.suite {
        return Err(CliError::Schema(
            "give a subcommand or --suite (see --help)".into(),
        ));
    }
    if cli.timing {
        report.insert(
            "timing_ms".into(),
            json!(start.elapsed().as_millis() as u64),
        );
    }
    Ok((Value::Object(report), code))
}
