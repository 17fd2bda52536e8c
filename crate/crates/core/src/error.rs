use alloc::string::String;

/// Errors raised by the arithmetic kernel and the verification routines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
    #[error("substitution q -> q^0 is not allowed")]
    ZeroSubstitution,
    #[error("pole: {0}")]
    Pole(String),
    #[error("unbalanced factor product (total multiplicity {0}); the q -> 1 limit is a pole or zero")]
    Unbalanced(i64),
    #[error("exact division left a nonzero remainder: {0}")]
    InexactDivision(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("expression is bivariate; a univariate value was required")]
    NotUnivariate,
}

pub type Result<T> = core::result::Result<T, Error>;
