use std::fmt;
use std::process::ExitCode;

use qwoa_core::Error;

/// Error carrying the process exit status.
#[derive(Debug)]
pub enum Failure {
    /// Unreadable or inconsistent input. Exit 2.
    Input(String),
    /// Domain or register larger than the configured cap. Exit 3.
    Capacity(String),
    /// A numerical self-check did not hold. Exit 4.
    Numerical(String),
    /// Filesystem trouble while writing results. Exit 1.
    Io(String),
}

impl Failure {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            Failure::Io(_) => 1,
            Failure::Input(_) => 2,
            Failure::Capacity(_) => 3,
            Failure::Numerical(_) => 4,
        })
    }

    pub fn input(msg: impl Into<String>) -> Self {
        Failure::Input(msg.into())
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) | Failure::Capacity(m) => f.write_str(m),
            Failure::Numerical(m) => write!(f, "numerical check failed: {m}"),
            Failure::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Capacity { .. } => Failure::Capacity(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

pub type Outcome<T> = std::result::Result<T, Failure>;
