use thiserror::Error;

use crate::scalar_rings::Monomial;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("polynomial supports are not adjacent: [{lhs_lo}, {lhs_hi}] and [{rhs_lo}, {rhs_hi}]")]
    IntervalMismatch {
        lhs_lo: i64,
        lhs_hi: i64,
        rhs_lo: i64,
        rhs_hi: i64,
    },
    #[error("0/1 assignment does not cover the support exactly once: {0}")]
    IncompleteAssignment(String),
    #[error("base case is singular: r^3+s^3+t^3-3rst vanishes in the target ring")]
    SingularBaseCase,
    #[error("bad index ({i}, {j}) for dimension {n}")]
    BadIndex { n: usize, i: usize, j: usize },
    #[error("operand mismatch: {0}")]
    Mismatch(String),
    #[error("bad dimension {0}: expected an odd dimension 2n-1 with n >= 2")]
    BadDimension(usize),
    #[error("level overflow: r + s = {sum} must be below n = {n}")]
    LevelOverflow { sum: usize, n: usize },
    #[error("left-normed commutator needs at least two entries")]
    TooShort,
    #[error("substitution is not total: generator `{0}` is unmapped")]
    BadSubstitution(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("resource cap exceeded: {what} ({size} > {cap})")]
    CapExceeded { what: String, size: usize, cap: usize },
    #[error("multiplication lemma hypothesis fails: {0} divides the monomial")]
    HypothesisViolated(Monomial),
    #[error("multiplication lemma needs weight(w) >= weight(w'), got {r} < {s}")]
    BadOrder { r: usize, s: usize },
    #[error("{0} is not a summand")]
    NotASummand(Monomial),
    #[error("construction failed its own verification: {0}")]
    ConstructionBug(String),
    #[error("alpha counts of the monomial triple are not pairwise distinct mod 3 at level {0}")]
    DistinctnessViolated(u32),
    #[error("exhaustive search over {0} pairs is too large; use random mode")]
    NeedsRandomMode(u128),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
