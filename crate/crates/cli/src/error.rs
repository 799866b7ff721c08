use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] perflat::Error),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// 2 when the input was fine but the answer is "not in family" or
    /// undecided, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(perflat::Error::NotInFamily(_) | perflat::Error::BudgetExhausted(_)) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
