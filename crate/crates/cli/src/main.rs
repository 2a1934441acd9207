//! `sbc`: Sylow branching coefficients for hook characters at the prime 2.

mod commands;
mod output;

use std::env;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use sbc_core::wreath::DEFAULT_LEVEL_CAP;
use sbc_core::{Mode, Oracle, ThresholdTable};
use serde_json::json;

use crate::commands::Inconsistent;
use crate::output::{render, Format, OutputRecord};

#[derive(Parser)]
#[command(name = "sbc", version, about = "Sylow branching coefficients for hook characters at the prime 2")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Linear constituents of the hook character restricted to the Sylow 2-subgroup.
    Linear {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        x: usize,
        #[arg(long, default_value = "formula")]
        mode: Mode,
    },
    /// Multiplicity of one linear character, given by the leg lengths of
    /// hooks of the binary digits of n, largest digit first.
    Coeff {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        x: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        parts: Vec<usize>,
        #[arg(long, default_value = "formula")]
        mode: Mode,
    },
    /// Full decomposition of the restriction, or its degree profile.
    Restrict {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        x: usize,
        /// Counts by degree instead of the constituent list.
        #[arg(long)]
        profile: bool,
        #[arg(long, default_value = "oracle")]
        mode: Mode,
    },
    /// Box thresholds for each degree exponent k.
    Thresholds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long, default_value = "formula")]
        mode: Mode,
    },
    /// Hooks of n whose restriction has a constituent of degree 2^k.
    Hset {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value = "formula")]
        mode: Mode,
    },
    /// Cross-check formulas against the oracle for all n up to --max-n.
    Verify {
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        /// Suites to run, comma separated; all when omitted.
        #[arg(long, value_delimiter = ',')]
        suite: Vec<String>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Linear { .. } => "linear",
            Command::Coeff { .. } => "coeff",
            Command::Restrict { .. } => "restrict",
            Command::Thresholds { .. } => "thresholds",
            Command::Hset { .. } => "hset",
            Command::Verify { .. } => "verify",
        }
    }

    fn inputs(&self) -> serde_json::Value {
        match self {
            Command::Linear { n, x, mode } => json!({ "n": n, "x": x, "mode": mode }),
            Command::Coeff { n, x, parts, mode } => json!({ "n": n, "x": x, "parts": parts, "mode": mode }),
            Command::Restrict { n, x, profile, mode } => json!({ "n": n, "x": x, "profile": profile, "mode": mode }),
            Command::Thresholds { n, k, mode } => json!({ "n": n, "k": k, "mode": mode }),
            Command::Hset { n, k, mode } => json!({ "n": n, "k": k, "mode": mode }),
            Command::Verify { max_n, suite } => json!({ "max_n": max_n, "suite": suite }),
        }
    }
}

fn level_cap() -> Result<u32> {
    match env::var("SBC_LEVEL_CAP") {
        Ok(v) => v.trim().parse().with_context(|| format!("SBC_LEVEL_CAP must be a non-negative integer, got '{v}'")),
        Err(env::VarError::NotPresent) => Ok(DEFAULT_LEVEL_CAP),
        Err(e) => Err(e).context("reading SBC_LEVEL_CAP"),
    }
}

fn run(cli: &Cli) -> Result<(String, bool)> {
    let thr = ThresholdTable::new(Arc::new(Oracle::with_cap(level_cap()?)?));
    let start = Instant::now();
    let out = match &cli.command {
        Command::Linear { n, x, mode } => commands::linear(&thr, *n, *x, *mode),
        Command::Coeff { n, x, parts, mode } => commands::coeff(&thr, *n, *x, parts, *mode),
        Command::Restrict { n, x, profile, mode } => commands::restrict(&thr, *n, *x, *profile, *mode),
        Command::Thresholds { n, k, mode } => commands::thresholds(&thr, *n, *k, *mode),
        Command::Hset { n, k, mode } => commands::hset(&thr, *n, *k, *mode),
        Command::Verify { max_n, suite } => commands::verify(&thr, *max_n, suite),
    }?;
    let record = OutputRecord {
        command: cli.command.name().to_string(),
        inputs: cli.command.inputs(),
        result: out.result,
        provenance: out.provenance,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    Ok((render(&record, &out.table, cli.format)?, out.ok))
}

/// 2 for broken invariants and formula/oracle disagreement, 1 otherwise.
fn exit_code(e: &anyhow::Error) -> u8 {
    let core = e.downcast_ref::<sbc_core::Error>().is_some_and(sbc_core::Error::is_consistency);
    if core || e.is::<Inconsistent>() {
        2
    } else {
        1
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(&cli) {
        Ok((text, ok)) => {
            print!("{text}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
