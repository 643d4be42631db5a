//! Exact computation in the unipotent upper-triangular groups `U_n`.
//!
//! The crate builds generator sets of `U_n` whose generated subgroups have
//! maximal derived length, checks them by exact evaluation, expands word
//! values symbolically, and searches small groups by brute force.

pub mod constructions;
pub mod error;
pub mod free_words;
pub mod group_explorer;
pub mod scalar_rings;
pub mod symbolic_oracle;
pub mod unitriangular;

pub use error::{Error, Result};
pub use free_words::{evaluate, Assignment, Evaluator, Word};
pub use scalar_rings::{
    Flag, Integer, Integers, Monomial, MultilinearPoly, PolyRing, PrimeField, Ring, RingSpec,
};
pub use unitriangular::{CosetPattern, MatrixJson, NumericMatrix, UnipotentMatrix};
