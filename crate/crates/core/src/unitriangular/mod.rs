//! The group `U_n` of upper unitriangular matrices over a [`Ring`](crate::scalar_rings::Ring).

mod coset;
mod json;
mod matrix;

pub use coset::CosetPattern;
pub use json::{MatrixJson, NumericMatrix};
pub use matrix::UnipotentMatrix;
