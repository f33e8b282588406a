use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("q-power q^{0} is not representable with t = q^(1/{1})")]
    NotRepresentable(String, u32),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("series offsets {0} and {1} are not commensurate")]
    Incommensurate(String, String),
    #[error("linear system at degree {degree}: {reason}")]
    Solve { degree: usize, reason: String },
    #[error("uncleared pole: {0}")]
    Pole(String),
}

pub type Result<T> = core::result::Result<T, Error>;
