use thiserror::Error;

/// Failures after argument parsing. All of these exit with status 1 and
/// are written into the report.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}", match .line { Some(l) => format!("line {l}: {message}"), None => message.clone() })]
    Input { line: Option<usize>, message: String },
    #[error("{0}")]
    Argument(String),
    #[error(transparent)]
    Domain(#[from] dvrtop_core::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Input { .. } => "input",
            CliError::Argument(_) => "argument",
            CliError::Domain(_) => "domain",
            CliError::Io(_) => "io",
        }
    }

    pub fn line(&self) -> Option<usize> {
        match self {
            CliError::Input { line, .. } => *line,
            _ => None,
        }
    }
}
