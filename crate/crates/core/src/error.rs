use thiserror::Error;

/// Errors surfaced by the arithmetic and analysis layers.
///
/// Contract violations that cannot arise through the public constructors
/// (e.g. mixing elements of different fields) panic instead; everything a
/// caller can legitimately trigger with valid inputs is represented here.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid prime {0}: {1}")]
    InvalidPrime(u64, &'static str),

    #[error("division by zero in the field")]
    DivisionByZero,

    #[error("singular curve: gcd(f, f') != 1")]
    SingularCurve,

    #[error("invalid Mumford divisor: {0}")]
    InvalidDivisor(String),

    #[error("divisor is not reduced: {0}")]
    NotReduced(String),

    #[error("resource guard exceeded: {0}")]
    Guard(String),

    #[error("invalid Grant point: {0}")]
    InvalidGrantPoint(String),

    #[error("Grant addition formulas do not apply: {0}")]
    FormulaDomain(String),

    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    #[error("unknown coordinate tag `{0}`")]
    UnknownTag(String),
}
