use thiserror::Error;

/// Errors raised by the library.
///
/// Variants fall into two groups: malformed input (parse and validation
/// failures) and domain failures (well-formed input that violates the
/// precondition of an operation). [`Error::is_input_error`] separates them.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("degree {0} is outside the supported range 1..={max}", max = crate::MAX_DEGREE)]
    DegreeOutOfRange(usize),
    #[error("flavor mismatch: expected {expected}, found {found}")]
    FlavorMismatch {
        expected: &'static str,
        found: &'static str,
    },
    #[error("index {index} out of range (length {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("system is not simple: entry {0} is not a transposition")]
    NotSimple(usize),
    #[error("system is not transitive: orbit sizes {0:?}")]
    Intransitive(Vec<usize>),
    #[error("total monodromy is not the identity: {0}")]
    NotClosing(String),
    #[error("invalid chart at event {event}: {msg}")]
    InvalidChart { event: usize, msg: String },
    #[error("chart move not applicable: {0}")]
    MoveNotApplicable(String),
    #[error("invalid PD code: {0}")]
    InvalidDiagram(String),
    #[error("invalid coloring: {0}")]
    InvalidColoring(String),
    #[error("tangle boundary mismatch: {0}")]
    BoundaryMismatch(String),
    #[error("invalid quandle: {0}")]
    InvalidQuandle(String),
    #[error("not a surjective quandle homomorphism: {0}")]
    NotSurjection(String),
    #[error("json: {0}")]
    Json(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }

    /// True for malformed input, false for domain failures on valid input.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. }
                | Error::DegreeOutOfRange(_)
                | Error::InvalidChart { .. }
                | Error::InvalidDiagram(_)
                | Error::InvalidQuandle(_)
                | Error::Json(_)
        )
    }

    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::DegreeMismatch { .. } => "degree_mismatch",
            Error::DegreeOutOfRange(_) => "degree_out_of_range",
            Error::FlavorMismatch { .. } => "flavor_mismatch",
            Error::IndexOutOfRange { .. } => "index_out_of_range",
            Error::NotSimple(_) => "not_simple",
            Error::Intransitive(_) => "intransitive",
            Error::NotClosing(_) => "not_closing",
            Error::InvalidChart { .. } => "invalid_chart",
            Error::MoveNotApplicable(_) => "move_not_applicable",
            Error::InvalidDiagram(_) => "invalid_diagram",
            Error::InvalidColoring(_) => "invalid_coloring",
            Error::BoundaryMismatch(_) => "boundary_mismatch",
            Error::InvalidQuandle(_) => "invalid_quandle",
            Error::NotSurjection(_) => "not_surjection",
            Error::Json(_) => "json",
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
