use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Broad classification used by the command line front end for exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Bad input or configuration.
    Usage,
    /// A checked mathematical claim came out false.
    Falsified,
    /// Two independent computations disagree, or an internal invariant broke.
    Internal,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0} is not irreducible")]
    NotIrreducible(String),
    #[error("{what} = {value} exceeds the configured limit {limit}")]
    SizeBound { what: &'static str, value: u64, limit: u64 },
    #[error("degenerate tower: {0}")]
    Degenerate(String),
    #[error("torsion polynomial is not Eisenstein: {0}")]
    EisensteinFailure(String),
    #[error("element {0} is not invertible modulo the prime")]
    NotInvertible(String),
    #[error("differential has a pole at the prime above p")]
    PoleAtQ,
    #[error("denominator clearing left a non-integral value in the Cartier formula")]
    NotIntegralAfterClear,
    #[error("local truncation too short: have {have}, need at least {need}")]
    TruncationTooShort { have: usize, need: usize },
    #[error("filtration mismatch: {0}")]
    FiltrationMismatch(String),
    #[error("claim violated: {claim} (witness character j = {character:?})")]
    TheoremViolation { claim: String, character: Option<usize> },
    #[error("unit rank deficit: found {found}, expected {expected}")]
    RankDeficit { found: usize, expected: usize },
    #[error("element is not a unit of R")]
    NotAUnit,
    #[error("oracle mismatch: {0}")]
    OracleMismatch(String),
    #[error("no principalization witness found within the search bound: {0}")]
    WitnessNotFound(String),
    #[error("zeta numerator fails the functional equation: {0}")]
    SymmetryViolation(String),
    #[error("logarithmic differential is not integral: {0}")]
    NotIntegral(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Unsupported(_)
            | Error::Parse(_)
            | Error::NotIrreducible(_)
            | Error::SizeBound { .. }
            | Error::Degenerate(_)
            | Error::NotInvertible(_)
            | Error::NotAUnit
            | Error::PoleAtQ
            | Error::TruncationTooShort { .. } => ErrorClass::Usage,
            Error::FiltrationMismatch(_)
            | Error::TheoremViolation { .. }
            | Error::DimensionMismatch(_) => ErrorClass::Falsified,
            Error::EisensteinFailure(_)
            | Error::NotIntegralAfterClear
            | Error::RankDeficit { .. }
            | Error::OracleMismatch(_)
            | Error::WitnessNotFound(_)
            | Error::SymmetryViolation(_)
            | Error::NotIntegral(_) => ErrorClass::Internal,
        }
    }

    pub(crate) fn violation(claim: impl Into<String>, character: Option<usize>) -> Self {
        Error::TheoremViolation { claim: claim.into(), character }
    }
}
