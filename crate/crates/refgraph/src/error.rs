use std::path::PathBuf;

use refgraph_core::history::HistoryError;

/// Process exit status for a failed run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    /// Unreadable or malformed input.
    Input = 1,
    /// Bad flags, bad selector, unusable configuration.
    Config = 2,
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("{path}:{line}: {message}")]
    Malformed { path: PathBuf, line: usize, message: String },
    #[error("{path}: {source}")]
    History { path: PathBuf, source: HistoryError },
    #[error("{path}: invalid graph dump: {message}")]
    Dump { path: PathBuf, message: String },
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Config(String),
    #[error("no subgraph matches selector `{0}`")]
    NoMatch(String),
}

impl Error {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            Self::Config(_) | Self::NoMatch(_) => ExitCode::Config,
            _ => ExitCode::Input,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
