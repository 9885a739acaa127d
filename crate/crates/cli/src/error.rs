use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("unresolved reference to {0}")]
    UnresolvedReference(String),
    #[error("unknown demo {0:?}")]
    UnknownDemo(String),
    #[error("malformed input: {0}")]
    Shape(String),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    /// A validator rejected the named object.
    #[error("{location}: {error}")]
    Check { location: String, error: modcat::Error },
}

impl CliError {
    /// Check failures exit 1, malformed input exits 2.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Check { .. } => 1,
            _ => 2,
        }
    }
}
