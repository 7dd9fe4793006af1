//! Error type shared by every module of the library.

use thiserror::Error;

/// Failure modes surfaced by the library. Variant names mirror the
/// report codes printed by the command-line front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BlochError {
    #[error("BRANCH_CUT: argument {0} lies on the principal cut [1, inf)")]
    BranchCut(String),
    #[error("PRECISION_OVERFLOW: {0}")]
    PrecisionOverflow(String),
    #[error("DEGENERATE_ARGUMENT: {0}")]
    DegenerateArgument(String),
    #[error("DEPENDENT_ROWS: basis rows are linearly dependent (row {0})")]
    DependentRows(usize),
    #[error("INSUFFICIENT_PRECISION: {0}")]
    InsufficientPrecision(String),
    #[error("REDUCIBLE_POLYNOMIAL: {0}")]
    ReduciblePolynomial(String),
    #[error("UNSUPPORTED_DEGREE: degree {0} exceeds the supported maximum {1}")]
    UnsupportedDegree(usize, usize),
    #[error("NOT_STABLE: the embedded field is not stable under complex conjugation")]
    NotStable,
    #[error("CERTIFICATION_FAILED: {0}")]
    CertificationFailed(String),
    #[error("DIVISION_BY_ZERO")]
    DivisionByZero,
    #[error("DEGENERATE_CONFIGURATION: term {term} equals {value}")]
    DegenerateConfiguration { term: String, value: String },
    #[error("MU_NONZERO: {0}")]
    MuNonzero(String),
    #[error("RECOGNITION_FAILED: {0}")]
    RecognitionFailed(String),
    #[error("TOTALLY_REAL: the field has no complex embeddings")]
    TotallyReal,
    #[error("COINCIDENT_POINTS: {0}")]
    CoincidentPoints(String),
    #[error("THURSTON_VIOLATION: {0}")]
    ThurstonViolation(String),
    #[error("DEGENERATE_SHAPE: {0}")]
    DegenerateShape(String),
    #[error("NOT_VALIDATED: record {0} has not passed validation")]
    NotValidated(String),
    #[error("INVALID_INPUT: {0}")]
    InvalidInput(String),
    #[error("INTERNAL: {0}")]
    Internal(String),
}

impl BlochError {
    /// Stable upper-case code used in JSON reports.
    pub fn code(&self) -> &'static str {
        match self {
            Self::BranchCut(_) => "BRANCH_CUT",
            Self::PrecisionOverflow(_) => "PRECISION_OVERFLOW",
            Self::DegenerateArgument(_) => "DEGENERATE_ARGUMENT",
            Self::DependentRows(_) => "DEPENDENT_ROWS",
            Self::InsufficientPrecision(_) => "INSUFFICIENT_PRECISION",
            Self::ReduciblePolynomial(_) => "REDUCIBLE_POLYNOMIAL",
            Self::UnsupportedDegree(..) => "UNSUPPORTED_DEGREE",
            Self::NotStable => "NOT_STABLE",
            Self::CertificationFailed(_) => "CERTIFICATION_FAILED",
            Self::DivisionByZero => "DIVISION_BY_ZERO",
            Self::DegenerateConfiguration { .. } => "DEGENERATE_CONFIGURATION",
            Self::MuNonzero(_) => "MU_NONZERO",
            Self::RecognitionFailed(_) => "RECOGNITION_FAILED",
            Self::TotallyReal => "TOTALLY_REAL",
            Self::CoincidentPoints(_) => "COINCIDENT_POINTS",
            Self::ThurstonViolation(_) => "THURSTON_VIOLATION",
            Self::DegenerateShape(_) => "DEGENERATE_SHAPE",
            Self::NotValidated(_) => "NOT_VALIDATED",
            Self::InvalidInput(_) => "INVALID_INPUT",
            Self::Internal(_) => "INTERNAL",
        }
    }

    /// Process exit code: 1 input error, 2 precision failure, 3 internal.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::InsufficientPrecision(_)
            | Self::PrecisionOverflow(_)
            | Self::RecognitionFailed(_)
            | Self::CertificationFailed(_) => 2,
            Self::Internal(_) => 3,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, BlochError>;
