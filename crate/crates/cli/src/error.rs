use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] lockin_core::Error),
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    /// 2 for anything the user can fix in the configuration, 3 when the
    /// numerics hit a singularity they cannot step around.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(lockin_core::Error::IllConditioned(_)) => 3,
            _ => 2,
        }
    }
}
