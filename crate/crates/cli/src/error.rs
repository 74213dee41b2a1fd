use plv_core::PlvError;
use thiserror::Error;

/// Failure category; each maps to a fixed process exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reason {
    Config,
    Numerical,
    Conditioning,
    Inapplicable,
}

impl Reason {
    pub fn exit_code(self) -> i32 {
        match self {
            Reason::Config => 2,
            Reason::Numerical => 3,
            Reason::Conditioning => 4,
            Reason::Inapplicable => 5,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Reason::Config => "config",
            Reason::Numerical => "numerical",
            Reason::Conditioning => "conditioning",
            Reason::Inapplicable => "inapplicable",
        }
    }
}

#[derive(Debug, Error)]
#[error("{message}")]
pub struct CliError {
    pub reason: Reason,
    pub message: String,
}

impl CliError {
    pub fn new(reason: Reason, message: impl Into<String>) -> Self {
        Self { reason, message: message.into() }
    }

    pub fn config(message: impl Into<String>) -> Self {
        Self::new(Reason::Config, message)
    }

    /// `plv: error[<tag>]: <message>` on one line.
    pub fn render(&self) -> String {
        let flat = self.message.replace(['\n', '\r'], " ");
        format!("plv: error[{}]: {}", self.reason.tag(), flat)
    }
}

impl From<PlvError> for CliError {
    fn from(err: PlvError) -> Self {
        let reason = match &err {
            PlvError::Conditioning { .. } => Reason::Conditioning,
            PlvError::Feasibility { .. } | PlvError::Quadrature(_) => Reason::Numerical,
            PlvError::Domain(_) | PlvError::Model(_) | PlvError::Structure { .. } | PlvError::InvalidInput(_) => {
                Reason::Config
            }
        };
        CliError::new(reason, err.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
