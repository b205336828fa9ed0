use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("E_IO: {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("E_CONFIG: {0}")]
    Config(String),
    #[error("E_MODEL: {0}")]
    Model(String),
    #[error("{code}: {0}", code = .0.code())]
    Verifier(gloc::Error),
    #[error("E_TARGET_MISSED: {0}")]
    TargetMissed(String),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    pub fn code(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "E_IO",
            CliError::Config(_) => "E_CONFIG",
            CliError::Model(_) => "E_MODEL",
            CliError::Verifier(e) => e.code(),
            CliError::TargetMissed(_) => "E_TARGET_MISSED",
        }
    }

    /// Process exit status.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => 1,
            CliError::Config(_) => 2,
            CliError::Model(_) => 3,
            CliError::TargetMissed(_) => 6,
            CliError::Verifier(e) => match e {
                gloc::Error::HypothesisFails { .. } => 4,
                gloc::Error::NoSeparation { .. } => 5,
                gloc::Error::NotNormal { .. } | gloc::Error::NotSelfAdjoint { .. } | gloc::Error::Radius { .. } => 7,
                gloc::Error::Numerical(_) => 8,
                _ => 3,
            },
        }
    }
}
