use std::fmt;

/// Failure of a CLI command, carrying the process exit code contract:
/// 3 for input that does not parse, 2 for input that parses but describes an
/// invalid configuration, 1 for I/O trouble.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error at {}: {message}", display_pointer(pointer))]
    Parse { pointer: String, message: String },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{context}: {source}")]
    Io { context: String, source: std::io::Error },
}

fn display_pointer(p: &str) -> &str {
    if p.is_empty() {
        "document root"
    } else {
        p
    }
}

impl CliError {
    pub fn parse(pointer: impl Into<String>, message: impl fmt::Display) -> Self {
        CliError::Parse { pointer: pointer.into(), message: message.to_string() }
    }

    pub fn config(message: impl fmt::Display) -> Self {
        CliError::Config(message.to_string())
    }

    pub fn io(context: impl fmt::Display, source: std::io::Error) -> Self {
        CliError::Io { context: context.to_string(), source }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } => 3,
            CliError::Config(_) => 2,
            CliError::Io { .. } => 1,
        }
    }

    /// The JSON pointer of a parse error.
    pub fn pointer(&self) -> Option<&str> {
        match self {
            CliError::Parse { pointer, .. } => Some(pointer),
            _ => None,
        }
    }
}

impl From<flopslope_core::Error> for CliError {
    fn from(e: flopslope_core::Error) -> Self {
        CliError::Config(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

/// Appends one reference token to a JSON pointer.
pub fn push_token(pointer: &str, token: impl fmt::Display) -> String {
    let t = token.to_string().replace('~', "~0").replace('/', "~1");
    format!("{pointer}/{t}")
}
