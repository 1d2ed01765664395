use std::path::PathBuf;
use std::process::ExitCode;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error at {context}: {message}")]
    Config { context: String, message: String },

    #[error("numerical failure: {0}")]
    Numerical(anyondec::Error),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn config(context: &str, e: anyondec::Error) -> Self {
        CliError::Config {
            context: context.to_string(),
            message: e.to_string(),
        }
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(self.code())
    }

    pub fn code(&self) -> u8 {
        match self {
            CliError::Config { .. } => 2,
            CliError::Numerical(_) => 3,
            CliError::Io { .. } => 4,
        }
    }
}

/// Library errors raised while computing: numerical failures keep exit code
/// 3, anything else is a rejected input.
impl From<anyondec::Error> for CliError {
    fn from(e: anyondec::Error) -> Self {
        if e.is_numerical() {
            CliError::Numerical(e)
        } else {
            CliError::Config {
                context: "parameters".into(),
                message: e.to_string(),
            }
        }
    }
}
