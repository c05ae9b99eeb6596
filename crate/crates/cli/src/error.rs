use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("numerical failure: {0}")]
    Numerical(bhqnm::Error),
    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io { .. } => 1,
        }
    }
}

impl From<bhqnm::Error> for CliError {
    fn from(e: bhqnm::Error) -> Self {
        match e {
            bhqnm::Error::InvalidParams(msg) => CliError::Config(msg),
            other => CliError::Numerical(other),
        }
    }
}
