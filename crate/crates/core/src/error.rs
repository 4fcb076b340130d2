use thiserror::Error;

/// Errors raised by the algebraic and spectral-sequence operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("symmetric group degree {0} out of range (supported: 1..=8)")]
    DegreeOutOfRange(u32),

    #[error("invalid partition {0:?}: parts must be positive, nonincreasing and sum to at most 8")]
    InvalidPartition(Vec<u32>),

    #[error("mismatched symmetric group degrees: S_{left} vs S_{right}")]
    MismatchedDegree { left: u8, right: u8 },

    #[error("not divisible: remainder does not vanish at t-degree {degree}")]
    NotDivisible { degree: i32 },

    #[error("divisor has no invertible lowest term (found {0})")]
    NonUnitDivisor(String),

    #[error("cannot invert non-monomial {0}")]
    NotInvertible(String),

    #[error("invalid space {0}")]
    InvalidSpace(String),

    #[error("{0}")]
    InvalidArgument(String),

    #[error("inadmissible differential d_{r} at {at:?}: {detail}")]
    Inadmissible {
        r: u32,
        at: (i32, i32),
        detail: String,
    },

    #[error("inconsistent long exact sequence at degree {degree}: {detail}")]
    LesInconsistent { degree: i32, detail: String },

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
