use thiserror::Error;

/// Errors raised by the matrix, form and reduction layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is empty")]
    Empty,
    #[error("matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("matrix is not symmetric: entry ({i},{j}) differs from ({j},{i})")]
    NotSymmetric { i: usize, j: usize },
    #[error("diagonal entry ({i},{i}) is odd")]
    OddDiagonal { i: usize },
    #[error("matrix is not skew-symmetric: entry ({i},{j}) is not the negative of ({j},{i})")]
    NotSkew { i: usize, j: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix is not unimodular: determinant {det}")]
    NotUnimodular { det: String },
    #[error("F2 matrix is not alternating at ({i},{j})")]
    NotAlternating { i: usize, j: usize },
    #[error("Arf invariant undefined: the form takes the value 1 on the radical")]
    RadicalNonzero,
    #[error("precondition failed for {op}: {detail}")]
    PreconditionFailed { op: &'static str, detail: String },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("mutation direction {k} out of range 1..={n}")]
    IndexOutOfRange { k: usize, n: usize },
    #[error("mod-2 ranks differ: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("brute-force oracle limited to n <= {max}, got n = {n}")]
    TooLarge { n: usize, max: usize },
    #[error("matrix is not a quasi-Cartan companion of the given skew-symmetric matrix")]
    NotACompanion,
    #[error("invalid sign choice: {0}")]
    InvalidSigns(String),
}

pub type Result<T> = std::result::Result<T, Error>;
