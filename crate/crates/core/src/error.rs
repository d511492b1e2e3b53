use thiserror::Error;

use crate::exactla::LinalgError;
use crate::permcore::PermError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("size mismatch: {0}")]
    Size(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("point is not in the open cell: {0}")]
    NotInCell(String),
    #[error("bad index: {0}")]
    Index(String),
    #[error("bad configuration: {0}")]
    Config(String),
    #[error("input error: {0}")]
    Input(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
