mod anonymize;
mod args;
mod config;
mod evaluate;
mod output;
mod stats;

use std::process::ExitCode;

use clap::Parser;
use litmask_core::corpus::CorpusError;
use litmask_core::eval::EvalError;
use litmask_core::AnonymizeError;

use args::{Cli, Command};

/// A bad combination of flags, reported with exit status 2.
#[derive(Debug)]
pub struct Usage(pub String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn is_usage(err: &anyhow::Error) -> bool {
    err.chain().any(|e| {
        e.is::<Usage>()
            || matches!(e.downcast_ref::<CorpusError>(), Some(CorpusError::InvalidConfig(_)))
            || matches!(e.downcast_ref::<AnonymizeError>(), Some(AnonymizeError::InvalidConfig(_)))
            || matches!(e.downcast_ref::<EvalError>(), Some(EvalError::InvalidConfig(_)))
    })
}

/// The error chain, leaving out causes whose text a parent already shows.
fn message(err: &anyhow::Error) -> String {
    let mut out = String::new();
    for cause in err.chain() {
        let text = cause.to_string();
        if !out.contains(&text) {
            if !out.is_empty() {
                out.push_str(": ");
            }
            out.push_str(&text);
        }
    }
    out
}

fn run() -> anyhow::Result<()> {
    let argv = config::expand_args(std::env::args_os().collect())?;
    let cli = Cli::parse_from(argv);
    match cli.command {
        Command::Anonymize(a) => anonymize::run(a),
        Command::Evaluate(e) => evaluate::run(e),
        Command::Stats(s) => stats::run(s),
        Command::Split(s) => output::split(s),
        Command::Variants(v) => output::variants(v),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", message(&err));
            if is_usage(&err) {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
