use thiserror::Error;

/// Front-end failure, split by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad configuration, arguments or input data (exit code 1).
    #[error("{0}")]
    Config(String),
    /// Anything that goes wrong once the inputs are accepted (exit code 2).
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 1,
            CliError::Runtime(_) => 2,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}
