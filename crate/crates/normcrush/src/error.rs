use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("structural error: {0}")]
    Structural(String),
    #[error("arity mismatch: {0}")]
    ArityMismatch(String),
    #[error("non-involutive gluing: {0}")]
    NonInvolutiveGluing(String),
    #[error("unknown shape: {0}")]
    UnknownShape(String),
    #[error("size limit exceeded: {size} tetrahedra exceeds cap {cap}")]
    SizeLimitExceeded { size: usize, cap: usize },
    #[error("length mismatch: expected {expected} coordinates, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("inadmissible vector: {0}")]
    InadmissibleVector(String),
    #[error("work cap exceeded after {0} search nodes")]
    WorkCapExceeded(u64),
    #[error("boundary face present: tetrahedron {tet} face {face}")]
    BoundaryFacePresent { tet: usize, face: usize },
    #[error("no valid region: {0}")]
    NoValidRegion(String),
    #[error("stale move: {0}")]
    StaleMove(String),
    #[error("catalog escape: {0}")]
    CatalogEscape(String),
    #[error("scheduler stuck: {0}")]
    SchedulerStuck(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("format error: {0}")]
    Format(String),
    #[error("property violation: {0}")]
    PropertyViolation(String),
}

impl Error {
    /// Stable kebab-case name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Structural(_) => "structural",
            Error::ArityMismatch(_) => "arity-mismatch",
            Error::NonInvolutiveGluing(_) => "non-involutive-gluing",
            Error::UnknownShape(_) => "unknown-shape",
            Error::SizeLimitExceeded { .. } => "size-limit-exceeded",
            Error::LengthMismatch { .. } => "length-mismatch",
            Error::InadmissibleVector(_) => "inadmissible-vector",
            Error::WorkCapExceeded(_) => "work-cap-exceeded",
            Error::BoundaryFacePresent { .. } => "boundary-face-present",
            Error::NoValidRegion(_) => "no-valid-region",
            Error::StaleMove(_) => "stale-move",
            Error::CatalogEscape(_) => "catalog-escape",
            Error::SchedulerStuck(_) => "scheduler-stuck",
            Error::InvalidInput(_) => "invalid-input",
            Error::Format(_) => "format",
            Error::PropertyViolation(_) => "property-violation",
        }
    }

    /// Exit code under the CLI contract: 2 for runtime property failures, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CatalogEscape(_) | Error::SchedulerStuck(_) | Error::PropertyViolation(_) => 2,
            _ => 1,
        }
    }
}
