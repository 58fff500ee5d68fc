use std::fmt;
use std::path::PathBuf;

use logmono_core::Error as CoreError;

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ExitStatus {
    /// The command ran and the property holds (or no verdict was requested).
    Ok = 0,
    /// Inconclusive, or the method does not apply to this input.
    Inconclusive = 2,
    /// Malformed input.
    Input = 3,
    /// Anything else.
    Internal = 4,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("syntax error at column {column}: {message}\n  {text}\n  {caret}")]
    Syntax {
        text: String,
        column: usize,
        message: String,
        caret: String,
    },
    #[error("{path}: line {line}: {message}")]
    RecFile {
        path: String,
        line: usize,
        message: String,
    },
    #[error("{0}")]
    Input(String),
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl CliError {
    /// `offset` counts characters from the start of `text`.
    pub fn syntax(text: &str, offset: usize, message: impl Into<String>) -> Self {
        CliError::Syntax {
            text: text.to_string(),
            column: offset + 1,
            message: message.into(),
            caret: format!("{}^", " ".repeat(offset)),
        }
    }

    pub fn status(&self) -> ExitStatus {
        match self {
            CliError::Syntax { .. }
            | CliError::RecFile { .. }
            | CliError::Input(_)
            | CliError::Read { .. } => ExitStatus::Input,
            CliError::Write { .. } | CliError::Internal(_) => ExitStatus::Internal,
            CliError::Core(e) => core_status(e),
        }
    }
}

fn core_status(e: &CoreError) -> ExitStatus {
    match e {
        CoreError::InvalidRecurrence(_)
        | CoreError::InvalidExpansion(_)
        | CoreError::InvalidArgument(_)
        | CoreError::IndexBelowOffset { .. }
        | CoreError::CoefficientPole { .. }
        | CoreError::ScaleSingular(_) => ExitStatus::Input,
        CoreError::Inapplicable(_)
        | CoreError::ZeroTerm(_)
        | CoreError::SignChange(..)
        | CoreError::DivisionByZero
        | CoreError::Pole(_) => ExitStatus::Inconclusive,
    }
}

impl fmt::Display for ExitStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ExitStatus::Ok => "ok",
            ExitStatus::Inconclusive => "inconclusive",
            ExitStatus::Input => "input error",
            ExitStatus::Internal => "internal error",
        };
        f.write_str(s)
    }
}
