use vertexlie::Error;

/// Failures that stop a command before it produces a verdict.
#[derive(Debug)]
pub enum CliError {
    /// Malformed flags or configuration: exit code 2.
    Usage(String),
    /// Invalid mathematical input, such as a table violating Jacobi: exit code 1.
    Math(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Math(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Math(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidStructure(_) | Error::Inconsistent(_) | Error::Decompose(_) => CliError::Math(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}
