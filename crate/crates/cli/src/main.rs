// Copyright 2026 The braidq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! `braidq` command-line interface.
//!
//! Exit status: 0 on success, 1 when a verification fails, 2 on usage or
//! cap errors.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::config::{Format, RunConfig, CONFIG_ENV};

#[derive(Debug, Parser)]
#[command(
    name = "braidq",
    version,
    about = "Braid-group gates, generalized Bell states and entanglement checks"
)]
struct Cli {
    /// Output format (overrides the config file).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// TOML config file; falls back to $BRAIDQ_CONFIG.
    #[arg(long, global = true, env = CONFIG_ENV)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the Yang-Baxter equation and the braid-group relations.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Print one generalized Bell state or the whole basis.
    Bell {
        #[arg(long)]
        n: usize,
        /// 1-based state index; omit for the full basis.
        #[arg(long)]
        index: Option<usize>,
    },
    /// Trace qubits out of a Bell state and report concurrence and PPT.
    Analyze {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        index: usize,
        /// Qubit labels to trace out, e.g. "C" or "C,D"; empty for none.
        #[arg(long, default_value = "")]
        trace: String,
    },
    /// Manipulate braid words.
    Word {
        #[arg(value_enum)]
        action: WordAction,
        /// Braid word, e.g. "s1 s2 s1'".
        text: String,
        /// Strand / qubit count (defaults to the word's largest index + 1).
        #[arg(long)]
        n: Option<usize>,
        /// Input state for `apply`: 1-based computational basis index.
        #[arg(long, conflicts_with = "state_file")]
        basis_index: Option<usize>,
        /// Input state for `apply`: fixture file.
        #[arg(long)]
        state_file: Option<PathBuf>,
        /// Write the result to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time matrix-free application of a random word.
    Bench {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 20)]
        len: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WordAction {
    Parse,
    Reduce,
    Normalize,
    Compile,
    Apply,
    Diagram,
}

/// Why a command did not succeed.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Verification(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Usage(_) => 2,
        }
    }
}

impl From<braidq::Error> for Failure {
    fn from(e: braidq::Error) -> Self {
        match e {
            braidq::Error::NoConvergence { .. } => Failure::Verification(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn load_config(cli: &Cli) -> Result<RunConfig, Failure> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::from_file(path).map_err(Failure::Usage)?,
        None => RunConfig::default(),
    };
    if let Some(f) = cli.format {
        cfg.format = f;
    }
    Ok(cfg)
}

fn run(cli: Cli) -> Result<String, Failure> {
    let cfg = load_config(&cli)?;
    match cli.command {
        Command::Verify { n, trials, seed } => {
            commands::verify(&cfg, n, trials, seed.unwrap_or(cfg.seed))
        }
        Command::Bell { n, index } => commands::bell(&cfg, n, index),
        Command::Analyze { n, index, trace } => commands::analyze(&cfg, n, index, &trace),
        Command::Word {
            action,
            text,
            n,
            basis_index,
            state_file,
            out,
        } => commands::word(
            &cfg,
            action,
            &text,
            n,
            basis_index,
            state_file.as_deref(),
            out.as_deref(),
        ),
        Command::Bench { n, len, seed } => commands::bench(&cfg, n, len, seed.unwrap_or(cfg.seed)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            let code = failure.code();
            match failure {
                Failure::Verification(report) => print!("{report}"),
                Failure::Usage(msg) => eprintln!("error: {msg}"),
            }
            ExitCode::from(code)
        }
    }
}
