use num_bigint::BigInt;
use thiserror::Error;

/// Errors raised while building or checking a Nakajima presentation.
///
/// Variants below the structural ones signal internal inconsistencies: they
/// cannot occur for admissible input unless the implementation is wrong.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {left_rows}x{left_cols} times {right_rows}x{right_cols}")]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("matrix entries do not match its shape ({rows}x{cols}, {len} entries)")]
    EntryCount {
        rows: usize,
        cols: usize,
        len: usize,
    },

    #[error("dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),

    #[error("row {row} has {found} entries, expected {expected}")]
    BadShape {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("row {0} is zero")]
    ZeroRow(usize),

    #[error("leading entry m_1,1 = {0} must be at least 1")]
    NonPositiveLead(BigInt),

    #[error(
        "parameter matrix is not admissible: level {level}, epsilon {epsilon:?}, pairing {pairing}"
    )]
    Inadmissible {
        level: usize,
        epsilon: Vec<u8>,
        pairing: BigInt,
    },

    #[error("basic cone for epsilon {0:?} has determinant other than +-1")]
    DetNotUnit(Vec<u8>),

    #[error("mu_0,{0} is negative")]
    NegativeMuZero(usize),

    #[error("internal mismatch: {0}")]
    InternalMismatch(String),

    #[error("assembled basis matrix is not dominating")]
    NotDominating,

    #[error(
        "generator {generator} is not of the form z_a - z_b*z_c required to eliminate z{variable}"
    )]
    MalformedEliminationTarget { generator: usize, variable: usize },

    #[error("no nonsingular vertex submatrix found")]
    UnboundedSearch,
}

pub type Result<T> = std::result::Result<T, Error>;
