use crate::codes::CodeError;
use crate::field::FieldError;
use crate::group::GroupError;
use crate::idempotents::IdempotentError;
use crate::shoda::ShodaError;

/// A group spec or field string that does not parse; `pos` is a byte offset.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at position {pos}: {message}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Shoda(#[from] ShodaError),
    #[error(transparent)]
    Idempotent(#[from] IdempotentError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Stable identifier for JSON error output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse(_) => "parse_error",
            Error::Group(GroupError::BadParameters(_)) => "bad_parameters",
            Error::Group(GroupError::Io(_)) | Error::Io(_) => "io_error",
            Error::Group(_) => "group_error",
            Error::Field(_) => "field_error",
            Error::Shoda(ShodaError::CharacteristicDividesOrder { .. }) => "not_semisimple",
            Error::Shoda(_) => "shoda_error",
            Error::Idempotent(_) => "idempotent_error",
            Error::Code(CodeError::BudgetExceeded { .. }) => "budget_exceeded",
            Error::Code(_) => "code_error",
        }
    }
}
