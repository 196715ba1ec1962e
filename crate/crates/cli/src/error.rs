use std::fmt;

use pentachain::{GeometryError, InvariantError, PachnerError, PentagonError, TorsionError, TriangulationError};

/// Process exit codes.
pub mod exit {
    pub const INTERNAL: i32 = 1;
    pub const PARSE: i32 = 2;
    pub const VALIDATION: i32 = 3;
    pub const DEGENERATE: i32 = 4;
    pub const NOT_ACYCLIC: i32 = 5;
    pub const VIOLATION: i32 = 6;
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn new(code: i32, message: impl Into<String>) -> Self {
        CliError {
            code,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<TriangulationError> for CliError {
    fn from(e: TriangulationError) -> Self {
        let code = if e.is_parse() { exit::PARSE } else { exit::VALIDATION };
        CliError::new(code, e.to_string())
    }
}

impl From<GeometryError> for CliError {
    fn from(e: GeometryError) -> Self {
        let code = match e {
            GeometryError::Parse { .. } => exit::PARSE,
            GeometryError::VertexCount { .. } => exit::VALIDATION,
            GeometryError::ZeroCirculation(_) | GeometryError::Degenerate { .. } => exit::DEGENERATE,
        };
        CliError::new(code, e.to_string())
    }
}

impl From<InvariantError> for CliError {
    fn from(e: InvariantError) -> Self {
        match e {
            InvariantError::Geometry(g) => g.into(),
            InvariantError::Torsion(TorsionError::NotAcyclic(_)) => CliError::new(exit::NOT_ACYCLIC, e.to_string()),
            other => CliError::new(exit::INTERNAL, other.to_string()),
        }
    }
}

impl From<PachnerError> for CliError {
    fn from(e: PachnerError) -> Self {
        match e {
            PachnerError::InvalidSite { .. } => CliError::new(exit::VALIDATION, e.to_string()),
            PachnerError::Rebuild(_) => CliError::new(exit::INTERNAL, e.to_string()),
        }
    }
}

impl From<PentagonError> for CliError {
    fn from(e: PentagonError) -> Self {
        CliError::new(exit::DEGENERATE, e.to_string())
    }
}
