//! The `citsolve` command line.

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;
use citsolve_core::{Error, Limits};

pub mod args;
pub mod bench;
pub mod commands;
pub mod report;

use args::{BenchFormat, Cli, CitCommand, Command, Format, IndependenceCommand};
use commands::{Ctx, Outcome};

/// Process exit statuses.
pub mod exit {
    pub const OK: i32 = 0;
    /// A model-enumerating semantics found no model.
    pub const NO_MODEL: i32 = 1;
    /// Bad arguments, unreadable or malformed input files.
    pub const USAGE: i32 = 2;
    pub const RESOURCE: i32 = 3;
    /// Decomposed and monolithic answers differ.
    pub const MISMATCH: i32 = 4;
    /// An invariant was violated: a bug or a non-monotone operator.
    pub const INTERNAL: i32 = 5;
}

pub fn exit_code(e: &Error) -> i32 {
    match e.root_cause() {
        Error::Parse { .. }
        | Error::Usage(_)
        | Error::InvalidPartition(_)
        | Error::InvalidCit(_)
        | Error::Io(_)
        | Error::Json(_) => exit::USAGE,
        Error::Resource { .. } => exit::RESOURCE,
        _ => exit::INTERNAL,
    }
}

fn format_of(cmd: &Command) -> Format {
    match cmd {
        Command::Solve(a) => a.output.format,
        Command::Independence { command } => match command {
            IndependenceCommand::Check { output, .. } | IndependenceCommand::Detect { output, .. } => output.format,
        },
        Command::Cit { command } => match command {
            CitCommand::Build { output, .. } => output.format,
            CitCommand::Solve { tree, .. } | CitCommand::Query { tree, .. } => tree.output.format,
        },
        Command::Bench(_) => Format::Text,
    }
}

fn dispatch(ctx: &Ctx, cmd: &Command) -> citsolve_core::Result<Outcome> {
    match cmd {
        Command::Solve(a) => commands::solve_cmd(ctx, a),
        Command::Independence { command } => commands::independence_cmd(ctx, command),
        Command::Cit { command } => commands::cit_cmd(ctx, command),
        Command::Bench(a) => bench::bench_cmd(ctx, a),
    }
}

/// Runs the command line `args` (including the program name) and returns
/// the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let limits = match Limits::from_env() {
        Ok(l) => l,
        Err(e) => {
            let _ = writeln!(err, "citsolve: {e}");
            return exit_code(&e);
        }
    };
    let ctx = Ctx {
        argv: args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect(),
        limits,
    };
    match dispatch(&ctx, &cli.command) {
        Ok(Outcome { report, code }) => {
            let text = match (&cli.command, format_of(&cli.command)) {
                (Command::Bench(a), _) => match (&a.format, &report.result) {
                    (BenchFormat::Csv, report::Section::Bench { rows, .. }) => bench::to_csv(rows),
                    _ => report.to_json() + "\n",
                },
                (_, Format::Json) => report.to_json() + "\n",
                (_, Format::Text) => report.to_text(),
            };
            if out.write_all(text.as_bytes()).is_err() {
                return exit::USAGE;
            }
            if code == exit::MISMATCH {
                let _ = writeln!(err, "citsolve: decomposed and monolithic answers differ");
            }
            code
        }
        Err(e) => {
            let _ = writeln!(err, "citsolve: {e}");
            exit_code(&e)
        }
    }
}
