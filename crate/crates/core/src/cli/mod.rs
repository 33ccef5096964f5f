//! Command-line front end: expression and network parsers, the analysis
//! commands, and CSV rendering.
//!
//! Every command returns its full output as a string so the binary stays a
//! thin shell around [`run`].

mod commands;
mod csv;
pub mod expr;
mod lex;
pub mod network;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::error::Error;

pub use commands::{bounds, eval, histogram, reachability};
pub use csv::{format_number, parse_sections, Section};
pub use expr::{Expr, Interpretation};
pub use network::{DistSpec, EdgeSpec, Network, NetworkSpec};

fn at(line: &Option<usize>) -> String {
    line.map_or_else(String::new, |l| format!("line {l}: "))
}

/// Failures reported by the command-line layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CliError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{}invalid probability {value}", at(.line))]
    InvalidProbability {
        line: Option<usize>,
        column: Option<usize>,
        value: f64,
    },

    #[error("{}unknown node `{id}`", at(.line))]
    UnknownNode { line: Option<usize>, id: String },

    #[error("node `{id}` is declared twice")]
    DuplicateNode { id: String },

    #[error("invalid node id `{id}`")]
    InvalidNode { id: String },

    #[error("{}link {from} -> {to} is declared twice", at(.line))]
    DuplicateEdge {
        line: Option<usize>,
        from: String,
        to: String,
    },

    #[error("{}link from `{id}` to itself", at(.line))]
    SelfLoop { line: Option<usize>, id: String },

    #[error("{}invalid link distribution: {message}", at(.line))]
    InvalidLink {
        line: Option<usize>,
        message: String,
    },

    #[error("network has no nodes")]
    EmptyNetwork,

    #[error("invalid JSON network: {0}")]
    Json(String),

    #[error("{path}: {message}")]
    Io { path: String, message: String },

    #[error("{0}")]
    Usage(String),

    #[error("bound routes disagree: {0}")]
    BoundsDisagree(String),

    #[error(transparent)]
    Algebra(#[from] Error),
}

impl CliError {
    pub(crate) fn syntax(line: usize, column: usize, message: impl Into<String>) -> Self {
        CliError::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    /// Stable machine-readable tag.
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Syntax { .. } => "syntax",
            CliError::InvalidProbability { .. } => "invalid-probability",
            CliError::UnknownNode { .. } => "unknown-node",
            CliError::DuplicateNode { .. } => "duplicate-node",
            CliError::InvalidNode { .. } => "invalid-node",
            CliError::DuplicateEdge { .. } => "duplicate-edge",
            CliError::SelfLoop { .. } => "self-loop",
            CliError::InvalidLink { .. } => "invalid-link",
            CliError::EmptyNetwork => "empty-network",
            CliError::Json(_) => "json",
            CliError::Io { .. } => "io",
            CliError::Usage(_) => "usage",
            CliError::BoundsDisagree(_) => "bounds-disagree",
            CliError::Algebra(Error::DidNotConverge { .. }) => "did-not-converge",
            CliError::Algebra(_) => "algebra",
        }
    }

    /// 2 for a convergence failure, 1 for every other error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Algebra(Error::DidNotConverge { .. }) => 2,
            _ => 1,
        }
    }

    /// Line and column of a positioned error.
    pub fn position(&self) -> Option<(usize, usize)> {
        match self {
            CliError::Syntax { line, column, .. } => Some((*line, *column)),
            CliError::InvalidProbability {
                line: Some(l),
                column: Some(c),
                ..
            } => Some((*l, *c)),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    /// Add summary sections (reachability only).
    #[arg(long, global = true)]
    pub summary: bool,

    /// Add Monte-Carlo columns.
    #[arg(long, global = true)]
    pub simulate: bool,

    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Monte-Carlo trials per estimate.
    #[arg(long, global = true, default_value_t = 10_000)]
    pub samples: usize,

    /// Last tick to render; defaults to the largest deadline.
    #[arg(long, global = true)]
    pub horizon: Option<u64>,

    /// Write the CSV here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            summary: false,
            simulate: false,
            seed: 0,
            samples: 10_000,
            horizon: None,
            output: None,
        }
    }
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Evaluate an expression: `t,pdf,cdf`.
    Eval { expr: String },
    /// Best-path arrival curves between all node pairs: `src,dst,t,cdf`.
    Reachability { file: PathBuf },
    /// Average histogram of nodes reached: `k,t,value`.
    Histogram { file: PathBuf },
    /// Earliest and latest arrival, from the distribution and from bounds.
    Bounds { expr: String },
}

/// Latency-distribution algebra toolkit.
#[derive(Debug, Clone, Parser)]
#[command(name = "deltaq", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub options: Options,
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// Runs one command and returns its CSV.
pub fn execute(cli: &Cli) -> Result<String, CliError> {
    let opts = &cli.options;
    if opts.simulate && opts.samples == 0 {
        return Err(CliError::Usage("--samples must be positive".into()));
    }
    match &cli.command {
        Command::Eval { expr } => eval(expr, opts),
        Command::Reachability { file } => reachability(&read(file)?, opts),
        Command::Histogram { file } => histogram(&read(file)?, opts),
        Command::Bounds { expr } => bounds(expr, opts),
    }
}

/// Runs one command and delivers its output; returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    let delivered = execute(cli).and_then(|csv| match &cli.options.output {
        Some(path) => std::fs::write(path, csv).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        }),
        None => {
            print!("{csv}");
            Ok(())
        }
    });
    match delivered {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            e.exit_code()
        }
    }
}
