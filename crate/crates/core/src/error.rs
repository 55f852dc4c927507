use thiserror::Error;

use crate::ordinal::Ordinal;

/// Mathematical errors. Syntax errors live in [`crate::notation::ParseError`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("left subtraction undefined: {lhs} is greater than {rhs}")]
    OrdinalUnderflow { lhs: Ordinal, rhs: Ordinal },

    #[error("{op} requires a finite sign expansion (birthday {dom})")]
    InfiniteExpansion { op: &'static str, dom: Ordinal },

    #[error("not representable: {0}")]
    NotRepresentable(String),

    #[error("inconsistent bounds: a lower bound is not below every upper bound")]
    InconsistentBounds,

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("unsupported birthday pattern: {0}")]
    UnsupportedPattern(String),

    #[error("depth sample {depth} is not below the limit birthday {birthday}")]
    DepthOutOfRange { depth: Ordinal, birthday: Ordinal },

    #[error("unknown sequence family `{0}`")]
    UnknownFamily(String),

    #[error("invalid limit configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
