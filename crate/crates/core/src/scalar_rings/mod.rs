//! Coefficient rings for matrix entries.
//!
//! A [`Ring`] value is the context (for instance the modulus of a prime field)
//! and [`Ring::Elem`] the bare element type, so matrices over `F_p` store plain
//! `u32`s. Three rings are provided: [`PrimeField`], [`Integers`] and
//! [`PolyRing`] (integer multilinear polynomials in the `α_i`, `β_i`).

mod circulant;
mod field;
mod integer;
mod poly;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use circulant::{circulant_determinant, solve_circulant, CirculantSolution};
pub use field::{is_prime, PrimeField};
pub use integer::Integer;
pub use poly::{Flag, Monomial, MultilinearPoly, PolyRing, MAX_DEGREE};

/// Exact commutative ring with unit used as matrix coefficients.
#[allow(clippy::wrong_self_convention)]
pub trait Ring: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_integer(&self, v: &Integer) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn from_i64(&self, v: i64) -> Self::Elem {
        self.from_integer(&Integer::from(v))
    }

    /// `base + Σ a·b`. Rings with expensive elements override this to avoid
    /// intermediate allocations.
    fn dot<'a, I>(&self, base: Self::Elem, pairs: I) -> Self::Elem
    where
        I: Iterator<Item = (&'a Self::Elem, &'a Self::Elem)>,
    {
        pairs.fold(base, |acc, (a, b)| self.add(&acc, &self.mul(a, b)))
    }

    /// Storage size of an element in terms, for resource caps.
    fn term_count(&self, _a: &Self::Elem) -> usize {
        1
    }

    /// Serializable description, if the ring has one.
    fn spec(&self) -> Option<RingSpec>;

    fn format(&self, a: &Self::Elem) -> String;

    fn parse(&self, s: &str) -> Result<Self::Elem>;
}

/// Interchange description of a numeric coefficient ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RingSpec {
    Fp { p: u32 },
    Int,
}

impl RingSpec {
    /// Modulus, with 0 standing for characteristic zero.
    pub fn characteristic(&self) -> u32 {
        match self {
            RingSpec::Fp { p } => *p,
            RingSpec::Int => 0,
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Fp { p } => write!(f, "fp:{p}"),
            RingSpec::Int => write!(f, "int"),
        }
    }
}

/// Accepts `fp:P`, `int`, `z` or `zz`.
impl FromStr for RingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        match t.as_str() {
            "int" | "z" | "zz" => Ok(RingSpec::Int),
            _ => {
                let p = t
                    .strip_prefix("fp:")
                    .or_else(|| t.strip_prefix("f"))
                    .and_then(|rest| rest.parse::<u32>().ok())
                    .ok_or_else(|| Error::Parse(format!("unknown ring `{s}` (use fp:P or int)")))?;
                PrimeField::new(p)?;
                Ok(RingSpec::Fp { p })
            }
        }
    }
}

/// The ring of integers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Integers;

impl Ring for Integers {
    type Elem = Integer;

    fn zero(&self) -> Integer {
        Integer::ZERO
    }
    fn one(&self) -> Integer {
        Integer::ONE
    }
    fn from_integer(&self, v: &Integer) -> Integer {
        v.clone()
    }
    fn is_zero(&self, a: &Integer) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Integer, b: &Integer) -> Integer {
        a + b
    }
    fn sub(&self, a: &Integer, b: &Integer) -> Integer {
        a - b
    }
    fn neg(&self, a: &Integer) -> Integer {
        -a
    }
    fn mul(&self, a: &Integer, b: &Integer) -> Integer {
        a * b
    }

    fn dot<'a, I>(&self, mut base: Integer, pairs: I) -> Integer
    where
        I: Iterator<Item = (&'a Integer, &'a Integer)>,
    {
        for (a, b) in pairs {
            base.add_mul_assign(a, b);
        }
        base
    }

    fn spec(&self) -> Option<RingSpec> {
        Some(RingSpec::Int)
    }

    fn format(&self, a: &Integer) -> String {
        a.to_string()
    }

    fn parse(&self, s: &str) -> Result<Integer> {
        s.parse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_spec_strings() {
        assert_eq!("fp:2".parse::<RingSpec>().unwrap(), RingSpec::Fp { p: 2 });
        assert_eq!("int".parse::<RingSpec>().unwrap(), RingSpec::Int);
        assert!("fp:4".parse::<RingSpec>().is_err());
        assert!("q".parse::<RingSpec>().is_err());
        assert_eq!(RingSpec::Fp { p: 5 }.to_string(), "fp:5");
    }

    #[test]
    fn ring_spec_json_shape() {
        let s = serde_json::to_string(&RingSpec::Fp { p: 2 }).unwrap();
        assert_eq!(s, r#"{"kind":"fp","p":2}"#);
        let s = serde_json::to_string(&RingSpec::Int).unwrap();
        assert_eq!(s, r#"{"kind":"int"}"#);
    }
}
