//! `drinfeld`: command-line front end.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 cap exceeded,
//! 3 a verified statement failed.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use drinfeld::group::{Caps, GroupInput};
use drinfeld::Error;

/// Version of the JSON output schemas.
pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Parser)]
#[command(
    name = "drinfeld",
    about = "Representations, Hopf subalgebras and fusion subcategories of Drinfeld doubles",
    version = concat!(env!("CARGO_PKG_VERSION"), " (schema 1)")
)]
pub struct Cli {
    /// Named group, e.g. S3, D8, Q8, A4, C6, S3xC2.
    #[arg(long, global = true, conflicts_with = "group_file")]
    preset: Option<String>,

    /// JSON file with exactly one of "preset", "permutations", "table".
    #[arg(long, global = true)]
    group_file: Option<PathBuf>,

    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,

    /// Cap override KEY=VALUE with KEY one of order, classes, enumerated.
    #[arg(long = "cap", global = true, value_name = "KEY=VALUE")]
    caps: Vec<String>,

    /// Seed for sampled checks; without it every instance is checked.
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Conjugacy classes.
    Classes,
    /// Character table.
    Chartable,
    /// Irreducible modules of the double.
    DoubleIrreps,
    /// Kernel of one irreducible module.
    DoubleKernel {
        /// Module address "a:g" (class index, centralizer character index).
        #[arg(long)]
        rep: String,
    },
    /// Central character basis.
    CenterBasis,
    /// Hopf subalgebra data.
    HopfEnumerate {
        /// Only normal Hopf subalgebras.
        #[arg(long)]
        normal: bool,
        /// Cross-check normality against the integral.
        #[arg(long)]
        brute_force: bool,
    },
    /// Fusion subcategory data.
    FusionEnumerate {
        /// Only normal fusion data.
        #[arg(long)]
        normal: bool,
    },
    /// Normal Hopf subalgebras against normal fusion subcategories.
    Correspond,
    /// Full invariant suite.
    Verify,
}

fn parse_caps(overrides: &[String]) -> Result<Caps, String> {
    let mut caps = Caps::default();
    for o in overrides {
        let (key, value) = o
            .split_once('=')
            .ok_or_else(|| format!("cap override `{o}` is not KEY=VALUE"))?;
        let value: usize = value
            .parse()
            .map_err(|_| format!("cap value `{value}` is not a number"))?;
        match key {
            "order" => caps.max_order = value,
            "classes" => caps.max_classes = value,
            "enumerated" => caps.max_enumerated = value,
            _ => return Err(format!("unknown cap `{key}`")),
        }
    }
    Ok(caps)
}

fn group_input(cli: &Cli) -> Result<GroupInput, String> {
    match (&cli.preset, &cli.group_file) {
        (Some(p), None) => Ok(GroupInput {
            preset: Some(p.clone()),
            permutations: None,
            table: None,
        }),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            GroupInput::parse(&text).map_err(|e| e.to_string())
        }
        _ => Err("exactly one of --preset or --group-file is required".into()),
    }
}

fn exit_code(e: &Error) -> u8 {
    if e.is_cap() {
        2
    } else if e.is_verification_failure() {
        3
    } else {
        1
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (input, caps) = match group_input(&cli).and_then(|i| Ok((i, parse_caps(&cli.caps)?))) {
        Ok(v) => v,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    match commands::run(&cli, &input, caps) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            if cli.json {
                let kind = if e.is_cap() {
                    "cap exceeded"
                } else if e.is_verification_failure() {
                    "theorem violated"
                } else {
                    "error"
                };
                println!("{}", serde_json::json!({ "error": kind, "detail": e.to_string() }));
            }
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
