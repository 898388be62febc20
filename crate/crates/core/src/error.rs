use thiserror::Error;

/// Errors raised by the algebraic operations in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial context mismatch: {0}")]
    PolyContext(String),
    #[error("inconsistent presentation: the relations generate the unit ideal")]
    InconsistentPresentation,
    #[error("derivation has no local nilpotency certificate")]
    CertificateRequired,
    #[error("grading mismatch: {0}")]
    GradingMismatch(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("point is not on the variety: relation {relation} evaluates to {value}")]
    PointNotOnVariety { relation: String, value: String },
    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),
}

pub type Result<T> = std::result::Result<T, Error>;
