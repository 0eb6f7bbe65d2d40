use thiserror::Error;

/// Failures that stop a command before it can produce a report.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),

    #[error("unknown family {0:?} (known: fomin6)")]
    UnknownFamily(String),

    #[error("post-transform is not symplectic: TᵀJT ≠ J")]
    NotSymplectic,

    #[error(transparent)]
    Core(#[from] cluster_reduce::Error),

    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::NotSymplectic | CliError::Core(cluster_reduce::Error::NotSymplecticChange) => {
                crate::EXIT_NOT_SYMPLECTIC
            }
            _ => crate::EXIT_INPUT,
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Input(format!("malformed JSON: {e}"))
    }
}
