use std::fmt;

use evograph_core::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Bad flags, unreadable or malformed files. Exit code 1.
    Input,
    /// Singular fits, undefined geometry. Exit code 2.
    Numerical,
}

#[derive(Debug)]
pub struct CliError {
    pub kind: ErrorKind,
    pub source: anyhow::Error,
}

impl CliError {
    pub fn input(msg: impl fmt::Display) -> Self {
        CliError {
            kind: ErrorKind::Input,
            source: anyhow::anyhow!("{msg}"),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.kind {
            ErrorKind::Input => 1,
            ErrorKind::Numerical => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#}", self.source)
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let kind = if e.is_numerical() {
            ErrorKind::Numerical
        } else {
            ErrorKind::Input
        };
        CliError {
            kind,
            source: e.into(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError {
            kind: ErrorKind::Input,
            source: e.into(),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError {
            kind: ErrorKind::Input,
            source: e.into(),
        }
    }
}
