use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
    #[error("solver failure: {0}")]
    Solver(String),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) | CliError::Io { .. } => 2,
            CliError::Solver(_) => 3,
        }
    }

    pub(crate) fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

/// Graph-shape problems are data errors; numerical ones are solver failures.
impl From<polar_core::Error> for CliError {
    fn from(e: polar_core::Error) -> Self {
        use polar_core::Error as E;
        match e {
            E::SelfLoop(_)
            | E::EmptyGraph
            | E::BadWeight(..)
            | E::NodeOutOfRange { .. }
            | E::Overlap(_)
            | E::ZeroVolume
            | E::EmptySeed
            | E::IsolatedNode(_)
            | E::EmptyBand => CliError::Data(e.to_string()),
            E::InvalidKappa(_) | E::InvalidParameter(_) | E::TooLarge { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Solver(e.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
