//! Batch front end: subset parsing, the five commands, and JSON/CSV output.

pub mod args;
pub mod commands;
pub mod input;
pub mod report;
pub mod verify;

pub use args::{Cli, Command, Common, EngineChoice, Format};
pub use input::{parse_psi, parse_subset};

use std::process::ExitCode;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("label `{label}` is out of range for n = {n}")]
    IndexOutOfRange { label: String, n: usize },
    #[error("unknown token `{0}` (expected S<i> or N<i>)")]
    UnknownToken(String),
    #[error("subset lists no qubits")]
    EmptySubset,
    #[error("cannot read `{0}` as a Bloch triple x,y,z")]
    PsiFormat(String),
    #[error("Bloch vector has norm {norm}; a pure input state needs norm 1")]
    PsiNotPure { norm: f64 },
    #[error("missing required option --{0}")]
    Missing(&'static str),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] cloneleak_core::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// What a successful command run amounts to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Ok,
    VerifyFailed,
}

impl Outcome {
    pub fn exit_code(self) -> ExitCode {
        match self {
            Outcome::Ok => ExitCode::SUCCESS,
            Outcome::VerifyFailed => ExitCode::from(1),
        }
    }
}

pub const USAGE_EXIT: u8 = 2;

/// Runs a parsed command line, writing the record to `out`.
pub fn run(cli: &Cli, out: &mut dyn std::io::Write) -> Result<Outcome, CliError> {
    commands::dispatch(cli, out)
}
