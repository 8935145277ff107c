use std::fmt;
use std::path::PathBuf;

use crate::scene::Violation;

/// Failure while reading one of the line-oriented text formats.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ParseErrorKind {
    Syntax(String),
    /// The text is well formed but describes something that breaks an
    /// invariant; `invariant` names it.
    Semantic {
        invariant: String,
        message: String,
    },
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Syntax(m) => write!(f, "syntax error: {m}"),
            ParseErrorKind::Semantic { invariant, message } => {
                write!(f, "semantic error [{invariant}]: {message}")
            }
        }
    }
}

impl ParseError {
    pub fn syntax(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError { line, column, kind: ParseErrorKind::Syntax(message.into()) }
    }

    pub fn semantic(line: usize, column: usize, invariant: impl Into<String>, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            kind: ParseErrorKind::Semantic { invariant: invariant.into(), message: message.into() },
        }
    }

    pub fn invariant(&self) -> Option<&str> {
        match &self.kind {
            ParseErrorKind::Semantic { invariant, .. } => Some(invariant),
            ParseErrorKind::Syntax(_) => None,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Parse { path: PathBuf, source: ParseError },
    #[error("{context}: {}", list_violations(.violations))]
    Invalid { context: String, violations: Vec<Violation> },
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("config: {0}")]
    Config(String),
    #[error("log {}: {message}", path.display())]
    Log { path: PathBuf, message: String },
    #[error("duplicate matrix key {0}")]
    DuplicateKey(String),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    /// Process exit code used by the command line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io { .. } => 3,
            _ => 2,
        }
    }
}

fn list_violations(v: &[Violation]) -> String {
    v.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
