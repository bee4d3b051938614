use thiserror::Error;

/// Errors raised by the algebra kernel and the constructors built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    /// A term carried fewer powers of `hb` than the requested division.
    #[error("term `{term}` is not divisible by hb^{power}")]
    NotDivisible { power: u32, term: String },

    #[error("bad site range {lo}..{hi} for n = {n}")]
    BadRange { lo: usize, hi: usize, n: usize },

    #[error("bad indices {indices:?} for n = {n}")]
    BadIndices { indices: Vec<usize>, n: usize },

    #[error("cannot combine a classical observable with a quantum one")]
    ModeMismatch,

    #[error("unknown parameter `{0}`")]
    UnknownParameter(String),
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
