//! Covexillary Schubert varieties over exact fields.
//!
//! The crate is organised bottom-up: [`exactla`] provides exact matrices and
//! subspaces, [`permcore`] the combinatorics of partial permutations, and the
//! remaining modules build the graph embedding, the conormal predicates and
//! the Kazhdan–Lusztig and equivariant cross-checks on top of them.

pub mod conormal;
pub mod embedding;
pub mod equivariant;
pub mod error;
pub mod exactla;
pub mod kl;
pub mod permcore;
pub mod pointfile;
pub mod suite;
pub mod varieties;

pub use error::{Error, Result};
