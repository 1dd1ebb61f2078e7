use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("element arity {got} does not match group rank {expected}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("operands belong to different ambient group algebras")]
    GroupMismatch,
    #[error("element has augmentation 0 and is not a unit")]
    NotAUnit,
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("order {order} exceeds the explicit-enumeration cap {cap}")]
    CapExceeded { order: usize, cap: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
