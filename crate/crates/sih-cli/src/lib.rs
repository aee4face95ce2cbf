//! Library half of the `sih` command-line tool: scenario config handling,
//! report rendering, and the subcommand implementations. The binary in
//! `main.rs` is a thin argument-parsing shell over this crate.

pub mod commands;
pub mod config;
pub mod render;

/// CLI-level error classes; each maps to a distinct exit code.
#[derive(Debug)]
pub enum CliError {
    /// Malformed config text or flag values; `line` set for file input.
    Parse { line: Option<usize>, message: String },
    /// A model invariant was violated.
    Validation(String),
    /// The computation itself failed.
    Numerical(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse { .. } => 2,
            CliError::Validation(_) => 3,
            CliError::Numerical(_) => 4,
            CliError::Io(_) => 5,
        }
    }

    pub fn message(&self) -> String {
        match self {
            CliError::Parse { line: Some(n), message } => {
                format!("parse error (line {n}): {message}")
            }
            CliError::Parse { line: None, message } => format!("parse error: {message}"),
            CliError::Validation(message) => format!("validation error: {message}"),
            CliError::Numerical(message) => format!("numerical error: {message}"),
            CliError::Io(message) => format!("i/o error: {message}"),
        }
    }
}

impl From<sih::Error> for CliError {
    fn from(e: sih::Error) -> Self {
        match e {
            sih::Error::Validation(v) => CliError::Validation(v.to_string()),
            sih::Error::InvalidPerturbation(v) => {
                CliError::Validation(format!("perturbation produces invalid parameters: {v}"))
            }
            other => CliError::Numerical(other.to_string()),
        }
    }
}
