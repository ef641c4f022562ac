use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable, malformed or inconsistent configuration.
    #[error("config error: {0}")]
    Config(String),
    #[error("solver error: {0}")]
    Solver(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn config(e: eitprop::Error) -> Self {
        Self::Config(e.to_string())
    }

    pub fn solver(method: impl std::fmt::Display, e: eitprop::Error) -> Self {
        Self::Solver(format!("{method}: {e}"))
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config(_) => 1,
            Self::Solver(_) | Self::Io(_) => 2,
        }
    }
}
