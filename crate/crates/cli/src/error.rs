use std::path::PathBuf;

use asai_core::Error as CoreError;

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Exit {
    Ok = 0,
    Parse = 2,
    Validation = 3,
    Cap = 4,
    Inconsistent = 5,
}

impl Exit {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{0}")]
    Usage(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

impl CliError {
    pub fn exit(&self) -> Exit {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => Exit::Parse,
            CliError::Inconsistent(_) => Exit::Inconsistent,
            CliError::Core(e) => match e {
                CoreError::Syntax { .. }
                | CoreError::UnknownFamily(_)
                | CoreError::NotPowerOfP { .. }
                | CoreError::InvalidElement(_)
                | CoreError::NotInGroup(_) => Exit::Parse,
                CoreError::NotPrime(_)
                | CoreError::ZeroDegree
                | CoreError::InvalidLaw(_)
                | CoreError::NotTriangular { .. } => Exit::Validation,
                CoreError::ResourceLimit { .. } => Exit::Cap,
                _ => Exit::Inconsistent,
            },
        }
    }

    /// Short machine-readable tag used in error reports.
    pub fn kind(&self) -> &'static str {
        match self.exit() {
            Exit::Ok => "ok",
            Exit::Parse => "parse_error",
            Exit::Validation => "validation_failure",
            Exit::Cap => "cap_exceeded",
            Exit::Inconsistent => "internal_inconsistency",
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
