use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use citsolve_core::{QueryMode, Semantics};

#[derive(Debug, Parser)]
#[command(
    name = "citsolve",
    version,
    about = "Solve normal logic programs, find conditional independencies and solve along them",
    after_help = "Exit codes: 0 ok, 1 no model, 2 usage/parse/input error, 3 resource cutoff, \
                  4 decomposed and monolithic answers differ, 5 internal error.\n\
                  CITSOLVE_CUTOFF overrides the exhaustive-search cutoffs, e.g. \
                  CITSOLVE_CUTOFF=enumerate=22,ultimate=4194304,ci2=18,ci4=10"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the models of a program under one semantics.
    Solve(SolveArgs),
    /// Check or detect conditional independencies.
    Independence {
        #[command(subcommand)]
        command: IndependenceCommand,
    },
    /// Build conditional-independence trees and solve along them.
    Cit {
        #[command(subcommand)]
        command: CitCommand,
    },
    /// Compare monolithic and decomposed solving over a directory of programs (CSV).
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BenchFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Credulous,
    Skeptical,
}

impl From<Mode> for QueryMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Credulous => QueryMode::Credulous,
            Mode::Skeptical => QueryMode::Skeptical,
        }
    }
}

fn semantics(s: &str) -> Result<Semantics, String> {
    s.parse().map_err(|e: citsolve_core::Error| e.to_string())
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    pub file: PathBuf,
    /// supported, kk, partial-stable, stable, wf or ultimate-wf
    #[arg(long, short, value_parser = semantics, default_value = "wf")]
    pub semantics: Semantics,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Subcommand)]
pub enum IndependenceCommand {
    /// Report semantic and syntactic verdicts for a partition file.
    Check {
        file: PathBuf,
        /// JSON file {"a1": [...], "a2": [...], "a3": [...]}
        #[arg(long)]
        partition: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// List certified non-trivial partitions found by the bounded search.
    Detect {
        file: PathBuf,
        /// Pivot candidates to examine.
        #[arg(long, default_value_t = 256)]
        max_candidates: usize,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, Args)]
pub struct TreeArgs {
    pub file: PathBuf,
    /// Load this tree (re-validated) instead of building one.
    #[arg(long)]
    pub cit: Option<PathBuf>,
    /// Worker threads for leaf tasks (default: available parallelism).
    #[arg(long, short)]
    pub jobs: Option<usize>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Subcommand)]
pub enum CitCommand {
    /// Build a tree and report its sizes.
    Build {
        file: PathBuf,
        /// Use this partition at the root.
        #[arg(long)]
        partition: Option<PathBuf>,
        /// Write the tree as JSON to this file.
        #[arg(long, short)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 64)]
        max_depth: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Solve leaf by leaf and recombine.
    Solve {
        #[command(flatten)]
        tree: TreeArgs,
        #[arg(long, short, value_parser = semantics, default_value = "wf")]
        semantics: Semantics,
    },
    /// Decide whether an atom is in some (credulous) or every (skeptical) model.
    Query {
        #[command(flatten)]
        tree: TreeArgs,
        #[arg(long, value_enum)]
        mode: Mode,
        /// Atom name as written in the program, e.g. `inf(d)`.
        #[arg(long)]
        atom: String,
        #[arg(long, short, value_parser = semantics, default_value = "stable")]
        semantics: Semantics,
    },
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Directory of .lp files.
    pub dir: PathBuf,
    #[arg(long, short, value_parser = semantics, default_value = "wf")]
    pub semantics: Semantics,
    /// Runs per measurement; the fastest is reported.
    #[arg(long, default_value_t = 3)]
    pub repeat: usize,
    #[arg(long, short)]
    pub jobs: Option<usize>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: BenchFormat,
}
