use hecke_rgroup::error::{Error, ErrorKind};
use serde_json::{json, Value};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("schema error {0}")]
    Schema(String),
    #[error("cannot read input: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Library(#[from] Error),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Schema(_) => "schema",
            CliError::Io(_) => "io",
            CliError::Library(e) => e.code(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Schema(_) | CliError::Io(_) => 2,
            CliError::Library(e) => match e.kind() {
                ErrorKind::Input => 2,
                ErrorKind::Guard => 3,
                ErrorKind::Inconsistency => 4,
            },
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "error": { "code": self.code(), "message": self.to_string() } })
    }
}
