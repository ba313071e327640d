use std::fmt;

use serde::Serialize;

/// Anything that ends a command early. Each kind has its own exit code.
#[derive(Debug)]
pub enum Failure {
    Core(unidp::Error),
    Parse { line: usize, message: String },
    Io(String),
}

#[derive(Serialize)]
struct Report {
    error: &'static str,
    message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    line: Option<usize>,
    exit_code: i32,
}

impl Failure {
    pub fn code(&self) -> &'static str {
        match self {
            Failure::Core(e) => e.code(),
            Failure::Parse { .. } => "parse_error",
            Failure::Io(_) => "io_error",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Parse { .. } => 3,
            Failure::Core(unidp::Error::InsufficientSample { .. }) => 4,
            Failure::Core(unidp::Error::BudgetExhausted { .. }) => 5,
            Failure::Core(unidp::Error::InvalidArgument(_)) => 6,
            Failure::Core(unidp::Error::OutOfRange(_)) => 7,
            Failure::Core(unidp::Error::Unsupported(_)) => 8,
            Failure::Io(_) => 9,
        }
    }

    /// One-line JSON for stderr.
    pub fn to_json(&self) -> String {
        let report = Report {
            error: self.code(),
            message: self.to_string(),
            line: match self {
                Failure::Parse { line, .. } => Some(*line),
                _ => None,
            },
            exit_code: self.exit_code(),
        };
        serde_json::to_string(&report).expect("error report serializes")
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Parse { line, message } => write!(f, "line {line}: {message}"),
            Failure::Io(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<unidp::Error> for Failure {
    fn from(e: unidp::Error) -> Self {
        Failure::Core(e)
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

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(e.to_string())
    }
}
