//! Exact linear algebra over a prime field or the rationals.

mod field;
mod matrix;
mod subspace;

pub use field::{Field, FieldSpec, PrimeField, Rationals, DEFAULT_PRIME};
pub use matrix::{Echelon, Matrix, Solution};
pub use subspace::Subspace;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("{0} is not a prime below 2^32")]
    NotPrime(u64),
    #[error("random sampling is only available over a prime field")]
    SamplingUnsupported,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch { left: (usize, usize), right: (usize, usize) },
    #[error("row {row} has {found} entries, expected {expected}")]
    Ragged { row: usize, expected: usize, found: usize },
    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("matrix is singular")]
    Singular,
}
