use thiserror::Error;

use crate::dimvec::DimVec;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("quiver is not symmetric: {forward} arrows {from} -> {to} but {backward} arrows {to} -> {from}")]
    NotSymmetric { from: String, to: String, forward: usize, backward: usize },

    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("kernel invariant violated: {0}")]
    KernelInvariant(String),

    #[error("operation requires a tripled kernel")]
    NotTripled,

    #[error("variable {var} is out of range for dimension vector {n}")]
    VariableOutOfRange { var: String, n: DimVec },

    #[error("polynomial is not symmetric in the variables of each colour for dimension vector {0}")]
    NotColorSymmetric(DimVec),

    #[error("dimension vector {got} does not match the {expected} vertices of the quiver")]
    WrongVertexCount { expected: usize, got: DimVec },

    #[error("filtration index must be at least 1, got {0}")]
    BadFiltrationIndex(i64),

    #[error("blocks do not sum to {0}")]
    BadBlocks(DimVec),

    #[error("split point {m} is not strictly between 0 and {n}")]
    SplitOutOfRange { m: DimVec, n: DimVec },

    #[error("{0}")]
    NonExactDivision(String),

    #[error("enumeration too large: about {estimate} steps exceeds the limit {limit}")]
    SizeGuard { estimate: u128, limit: u128 },

    #[error("unsupported field order {0}; supported orders are 2, 3, 4 and 5")]
    UnsupportedField(u32),

    #[error("{0}")]
    Precondition(String),
}
