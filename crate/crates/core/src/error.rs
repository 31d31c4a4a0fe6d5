//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree {0} is too small for this operation (need {1})")]
    DegreeTooSmall(usize, usize),

    #[error("matrix is not unimodular (det = {0})")]
    NonUnimodular(String),

    #[error("leading coefficient is zero; shift a root off infinity first")]
    ZeroLeadingCoefficient,

    #[error("form has zero discriminant (not separable)")]
    NotSeparable,

    #[error("defining form is reducible over Q")]
    ReducibleForm,

    #[error("{0} is not a discriminant (must be ≡ 0 or 1 mod 4)")]
    NotADiscriminant(i64),

    #[error("discriminant {0} is not negative")]
    NotImaginary(i64),

    #[error("prime {p} is inert in discriminant {delta}")]
    InertPrime { p: u64, delta: i64 },

    #[error("form vanishes identically mod {0}")]
    ZeroModP(u64),

    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),

    #[error("class group too large: {0}")]
    ClassGroupOverflow(String),

    #[error("input too large for exhaustive enumeration: {0}")]
    TooLarge(String),

    #[error("internal invariant violation: {0}")]
    NonIntegral(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
