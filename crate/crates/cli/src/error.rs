use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{origin}{}: {message}", line.map(|l| format!(", line {l}")).unwrap_or_default())]
    Config {
        origin: String,
        line: Option<usize>,
        message: String,
    },

    #[error(transparent)]
    Domain(#[from] ptdd_core::Error),

    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },

    #[error("{0} check(s) failed")]
    CheckFailed(usize),
}

impl CliError {
    pub fn config(origin: &str, message: impl Into<String>) -> Self {
        CliError::Config {
            origin: origin.to_string(),
            line: None,
            message: message.into(),
        }
    }

    /// Process exit status for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config { .. } | CliError::Io { .. } => 2,
            CliError::Domain(_) => 3,
            CliError::CheckFailed(_) => 4,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
