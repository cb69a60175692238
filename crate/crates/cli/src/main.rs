use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hawkins_core::catalog::{self, CheckOutcome, GridSpec};
use hawkins_core::document;
use hawkins_core::{analyze, scalar};
use serde_json::json;

/// Decide Hawkins' deformation conditions for metric Lie bialgebras.
#[derive(Parser)]
#[command(name = "hawkins", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze the structure described by a JSON document.
    Check {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Built-in classified structures.
    Catalog {
        #[command(subcommand)]
        command: CatalogCommand,
    },
    /// Re-derive the admissible parameters of a family over a grid.
    Classify {
        #[arg(long)]
        family: String,
        /// "p=lo..hi/step,…"
        #[arg(long)]
        grid: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// Print entry names, one per line.
    List {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Analyze an entry and compare with its expected flags.
    Check {
        /// Entry name; may be omitted with --all to check every entry.
        name: Option<String>,
        /// "k=v,…"; unspecified parameters keep their defaults.
        #[arg(long)]
        params: Option<String>,
        /// Check every documented sample instead of a single assignment.
        #[arg(long)]
        all: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

const OK: u8 = 0;
const MISMATCH: u8 = 1;
const INPUT_ERROR: u8 = 2;

fn fail(err: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {err}");
    ExitCode::from(INPUT_ERROR)
}

fn print_json(value: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(value).expect("report serializes"));
}

fn cmd_check(file: &PathBuf, format: Format) -> ExitCode {
    let text = match fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => return fail(format!("cannot read {}: {e}", file.display())),
    };
    let (b, m) = match document::load(&text) {
        Ok(x) => x,
        Err(e) => return fail(format!("{}: {e}", file.display())),
    };
    let report = match analyze(&b, &m) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    match format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => print_json(&report),
    }
    ExitCode::from(OK)
}

fn cmd_catalog_list(format: Format) -> ExitCode {
    let entries = catalog::list();
    match format {
        Format::Text => {
            for e in entries {
                println!("{}", e.name);
            }
        }
        Format::Json => {
            let rows: Vec<_> = entries
                .iter()
                .map(|e| {
                    json!({
                        "name": e.name,
                        "aliases": e.aliases,
                        "summary": e.summary,
                        "origin": e.origin,
                        "group": e.group,
                        "parameters": e.params.iter().map(|p| json!({
                            "name": p.name, "default": p.default, "doc": p.doc,
                        })).collect::<Vec<_>>(),
                        "constraints": e.constraints,
                        "derived": e.derived,
                    })
                })
                .collect();
            print_json(&rows);
        }
    }
    ExitCode::from(OK)
}

fn print_outcome(out: &CheckOutcome) {
    if out.params.iter().next().is_some() {
        println!("{} [{}]", out.name, out.params);
    } else {
        println!("{}", out.name);
    }
    print!("{}", out.report.to_text());
    if out.matches() {
        println!("MATCHES EXPECTED");
    } else {
        for m in &out.mismatches {
            println!("MISMATCH {}: expected {}, got {}", m.flag, m.expected, m.actual);
        }
    }
}

fn cmd_catalog_check(name: Option<&str>, params: Option<&str>, all: bool, format: Format) -> ExitCode {
    let entries = match (name, all) {
        (Some(n), _) => match catalog::get(n) {
            Ok(e) => vec![e],
            Err(e) => return fail(e),
        },
        (None, true) => catalog::list().iter().collect(),
        (None, false) => return fail("catalog check needs NAME or --all"),
    };
    if all && params.is_some() {
        return fail("--params and --all are exclusive");
    }
    let mut instances = Vec::new();
    for e in entries {
        let built = if all { e.sample_instances() } else { e.instantiate(params.unwrap_or("")).map(|i| vec![i]) };
        match built {
            Ok(v) => instances.extend(v),
            Err(err) => return fail(err),
        }
    }
    let mut outcomes = Vec::with_capacity(instances.len());
    for inst in &instances {
        match inst.check() {
            Ok(o) => outcomes.push(o),
            Err(e) => return fail(format!("{}: {e}", inst.label())),
        }
    }
    match format {
        Format::Text => {
            for (i, o) in outcomes.iter().enumerate() {
                if i > 0 {
                    println!();
                }
                print_outcome(o);
            }
        }
        Format::Json if outcomes.len() == 1 => print_json(&outcomes[0]),
        Format::Json => print_json(&outcomes),
    }
    ExitCode::from(if outcomes.iter().all(CheckOutcome::matches) { OK } else { MISMATCH })
}

fn cmd_classify(family: &str, grid: &str, format: Format) -> ExitCode {
    let spec = match GridSpec::parse(grid) {
        Ok(s) => s,
        Err(e) => return fail(e),
    };
    let result = match catalog::grid_classify(family, &spec) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    match format {
        Format::Json => print_json(&result),
        Format::Text => {
            let row = |pt: &Vec<scalar::Scalar>| {
                result
                    .parameters
                    .iter()
                    .zip(pt)
                    .map(|(n, v)| format!("{n}={}", scalar::format(v)))
                    .collect::<Vec<_>>()
                    .join(",")
            };
            println!("family {}: {} of {} points admissible", result.family, result.admissible.len(), result.points);
            for pt in &result.admissible {
                println!("  {}", row(pt));
            }
            println!("predicate: {}", result.predicate);
            if result.diff_is_empty() {
                println!("diff: empty");
            } else {
                for pt in &result.unexpected {
                    println!("diff: admissible but not predicted {}", row(pt));
                }
                for pt in &result.missing {
                    println!("diff: predicted but not admissible {}", row(pt));
                }
            }
        }
    }
    ExitCode::from(if result.diff_is_empty() { OK } else { MISMATCH })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Check { file, format } => cmd_check(file, *format),
        Command::Catalog { command: CatalogCommand::List { format } } => cmd_catalog_list(*format),
        Command::Catalog { command: CatalogCommand::Check { name, params, all, format } } => {
            cmd_catalog_check(name.as_deref(), params.as_deref(), *all, *format)
        }
        Command::Classify { family, grid, format } => cmd_classify(family, grid, *format),
    }
}
