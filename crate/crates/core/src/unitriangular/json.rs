//! Interchange form: `{"n": 6, "ring": {"kind": "fp", "p": 2}, "entries": [[1, 2, "1"], …]}`.
//!
//! Only nonzero strict-upper entries are listed, row-major, 1-based, with
//! decimal value strings (residues in `[0, p)` for prime fields).

use serde::{Deserialize, Serialize};

use super::UnipotentMatrix;
use crate::error::{Error, Result};
use crate::scalar_rings::{Integers, PrimeField, Ring, RingSpec};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub ring: RingSpec,
    pub entries: Vec<(usize, usize, String)>,
}

impl<R: Ring> UnipotentMatrix<R> {
    pub fn to_json(&self) -> Result<MatrixJson> {
        let ring = self
            .ring()
            .spec()
            .ok_or_else(|| Error::Unsupported("symbolic matrices have no interchange form".into()))?;
        let entries = self.nonzero_entries().map(|(i, j, v)| (i, j, self.ring().format(v))).collect();
        Ok(MatrixJson { n: self.n(), ring, entries })
    }

    /// Reads `json` into `ring`. Integer matrices may be read into a prime
    /// field (entries are reduced); any other ring change is rejected.
    pub fn from_json(json: &MatrixJson, ring: R) -> Result<Self> {
        let target = ring.spec();
        let compatible = match (json.ring, target) {
            (a, Some(b)) if a == b => true,
            (RingSpec::Int, Some(RingSpec::Fp { .. })) => true,
            _ => false,
        };
        if !compatible {
            return Err(Error::Mismatch(format!("matrix over {} cannot be read as {:?}", json.ring, target)));
        }
        let mut entries = Vec::with_capacity(json.entries.len());
        for (i, j, v) in &json.entries {
            entries.push((*i, *j, ring.parse(v)?));
        }
        Self::from_entries(ring, json.n, entries)
    }
}

/// A matrix over one of the interchange rings.
#[derive(Debug, Clone, PartialEq)]
pub enum NumericMatrix {
    Fp(UnipotentMatrix<PrimeField>),
    Int(UnipotentMatrix<Integers>),
}

impl NumericMatrix {
    pub fn from_json(json: &MatrixJson) -> Result<Self> {
        Ok(match json.ring {
            RingSpec::Fp { p } => NumericMatrix::Fp(UnipotentMatrix::from_json(json, PrimeField::new(p)?)?),
            RingSpec::Int => NumericMatrix::Int(UnipotentMatrix::from_json(json, Integers)?),
        })
    }

    pub fn to_json(&self) -> MatrixJson {
        match self {
            NumericMatrix::Fp(m) => m.to_json(),
            NumericMatrix::Int(m) => m.to_json(),
        }
        .expect("numeric rings serialize")
    }
}
