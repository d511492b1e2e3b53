//! Partial permutations: rank matrices, diagrams, essential sets, the
//! covexillary condition, Bruhat order, the completion to `S_2n` and
//! recovery from essential data. All indices are 1-based.

mod essential;
mod partial;
mod reconstruct;

pub use essential::{
    avoids_3412, avoids_pattern, bruhat_leq, covexillary_data, diagram, essential_set, find_pattern,
    is_covexillary, rank_matrix, CovexillaryData, EssentialCondition, RankMatrix,
};
pub use partial::PartialPermutation;
pub use reconstruct::{hat_permutation, reconstruct_from_essential};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("a partial permutation needs n >= 1")]
    Empty,
    #[error("column {column} has value {value} outside 0..={n}")]
    OutOfRange { column: usize, value: usize, n: usize },
    #[error("row {value} is used twice")]
    Repeated { value: usize },
    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("{0} is not a full permutation")]
    NotFull(String),
    #[error("not covexillary: essential boxes {first:?} and {second:?} are not weakly increasing")]
    NotCovexillary { first: (usize, usize), second: (usize, usize) },
    #[error("essential data not realizable: {0}")]
    NotRealizable(String),
    #[error("cannot parse permutation: {0}")]
    Parse(String),
}
