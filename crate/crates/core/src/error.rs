use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid pole: {0}")]
    InvalidPole(String),
    #[error("class outside compact type: sector {sector}/{d}, power {power}")]
    OutsideCompactType { sector: u32, d: u32, power: u32 },
    #[error("no non-equivariant limit: {0}")]
    NoNonequivariantLimit(String),
    #[error("invalid edge: {0}")]
    InvalidEdge(String),
    #[error("invalid degree: {0}")]
    InvalidDegree(String),
    #[error("tree contains a stable vertex")]
    ContainsStableVertex,
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
