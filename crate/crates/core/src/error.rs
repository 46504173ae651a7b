use thiserror::Error;

use crate::finite_fields::FieldId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("field degree must be at least 1")]
    ZeroDegree,

    #[error("resource limit exceeded: {what} ({value} > cap {cap})")]
    ResourceLimit {
        what: &'static str,
        value: u64,
        cap: u64,
    },

    #[error("incompatible fields: cannot move an element of {from} into {to}")]
    IncompatibleFields { from: FieldId, to: FieldId },

    #[error("element does not lie in the subfield {0}")]
    NotInSubfield(FieldId),

    #[error("{q} is not a power of the characteristic {p}")]
    NotPowerOfP { q: u64, p: u32 },

    #[error("invalid field element: {0}")]
    InvalidElement(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid group law: {0}")]
    InvalidLaw(String),

    #[error("law is not triangular: coordinate {coordinate} depends on index {depends_on}")]
    NotTriangular { coordinate: usize, depends_on: usize },

    #[error("unknown group family `{0}`")]
    UnknownFamily(String),

    #[error("point is not an element of this group: {0}")]
    NotInGroup(String),

    #[error("class function belongs to a different class table")]
    TableMismatch,

    #[error("endomorphism does not preserve the element set")]
    NotClosed,

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
