//! Serialized witnesses and their independent verification.

use serde::{Deserialize, Serialize};

use super::{PairWitness, TripleWitness};
use crate::error::{Error, Result};
use crate::free_words::{evaluate, Assignment, Word};
use crate::scalar_rings::{Flag, Integers, PrimeField, Ring, RingSpec};
use crate::unitriangular::{MatrixJson, UnipotentMatrix};

pub const WITNESS_VERSION: &str = concat!("unitri ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessKind {
    Triple,
    Pair,
}

/// Interchange form of a [`TripleWitness`] or [`PairWitness`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub kind: WitnessKind,
    pub d: u32,
    pub n: usize,
    pub ring: RingSpec,
    pub matrices: Vec<MatrixJson>,
    pub word: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monomial: Option<String>,
    pub sign: i8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_exponents: Option<[i64; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub component: Option<usize>,
    pub version: String,
}

impl<R: Ring> TripleWitness<R> {
    pub fn to_json(&self) -> Result<WitnessJson> {
        let ring = ring_spec(self.a.ring())?;
        let (r, s, t) = self.base_exponents;
        Ok(WitnessJson {
            kind: WitnessKind::Triple,
            d: self.d,
            n: self.n,
            ring,
            matrices: vec![self.a.to_json()?, self.b.to_json()?, self.c.to_json()?],
            word: self.word.to_string(),
            monomial: None,
            sign: 1,
            base_exponents: Some([r, s, t]),
            component: None,
            version: WITNESS_VERSION.into(),
        })
    }
}

impl<R: Ring> PairWitness<R> {
    pub fn to_json(&self) -> Result<WitnessJson> {
        Ok(WitnessJson {
            kind: WitnessKind::Pair,
            d: self.d,
            n: self.n,
            ring: ring_spec(self.a.ring())?,
            matrices: vec![self.a.to_json()?, self.b.to_json()?],
            word: self.word.to_string(),
            monomial: Some(self.monomial.to_string()),
            sign: self.sign,
            base_exponents: None,
            component: Some(self.component),
            version: WITNESS_VERSION.into(),
        })
    }
}

fn ring_spec<R: Ring>(ring: &R) -> Result<RingSpec> {
    ring.spec().ok_or_else(|| Error::Unsupported("witnesses need a numeric ring".into()))
}

/// Result of checking a witness: each named check with its outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub verified: bool,
    pub checks: Vec<(String, bool)>,
}

impl VerifyReport {
    fn push(&mut self, name: &str, ok: bool) {
        self.checks.push((name.to_string(), ok));
        self.verified &= ok;
    }
}

/// Re-checks a witness from its serialized data alone.
///
/// `Err` means the witness is malformed (unparsable, inconsistent shapes);
/// a well-formed witness whose claims fail yields `verified: false`.
pub fn verify(w: &WitnessJson) -> Result<VerifyReport> {
    match w.ring {
        RingSpec::Fp { p } => verify_in(w, PrimeField::new(p)?),
        RingSpec::Int => verify_in(w, Integers),
    }
}

fn verify_in<R: Ring>(w: &WitnessJson, ring: R) -> Result<VerifyReport> {
    let expected = match w.kind {
        WitnessKind::Triple => 3,
        WitnessKind::Pair => 2,
    };
    if w.matrices.len() != expected {
        return Err(Error::Mismatch(format!("{:?} witness needs {expected} matrices", w.kind)));
    }
    let mut mats = Vec::with_capacity(expected);
    for m in &w.matrices {
        if m.ring != w.ring || m.n != w.n {
            return Err(Error::Mismatch("matrix ring or dimension differs from the witness".into()));
        }
        mats.push(UnipotentMatrix::from_json(m, ring.clone())?);
    }
    let word = Word::parse(&w.word)?;
    let n = w.n;
    let mut report = VerifyReport { verified: true, checks: Vec::new() };
    report.push("depth certificate", w.d >= 1 && word.depth() + 1 >= w.d);
    let x1n = UnipotentMatrix::transvection(ring.clone(), n, 1, n)?;
    match w.kind {
        WitnessKind::Triple => {
            report.push("dimension", w.d <= 31 && n == (1usize << (w.d - 1)) + 1);
            let names = ["x1", "x2", "x3"];
            for (shift, name) in ["w(A,B,C) = X_(1,n)", "w(B,C,A) = I", "w(C,A,B) = I"].iter().enumerate() {
                let asg = Assignment::from_pairs((0..3).map(|k| (names[k], mats[(k + shift) % 3].clone())))?;
                let v = evaluate(&word, &asg)?;
                let ok = if shift == 0 { v == x1n } else { v.is_identity() };
                report.push(name, ok);
            }
        }
        WitnessKind::Pair => {
            if w.sign != 1 && w.sign != -1 {
                return Err(Error::Parse(format!("sign {} is not ±1", w.sign)));
            }
            report.push("weight certificate", word.weight() as usize + 1 >= n);
            if let Some(m) = &w.monomial {
                let m: super::LongMonomial = m.parse()?;
                let matches = m.degree() + 1 == n
                    && (1..n).all(|s| {
                        let alpha = m.flags()[s - 1] == Flag::Alpha;
                        let (x, y) = (mats[0].get(s, s + 1), mats[1].get(s, s + 1));
                        let one = ring.one();
                        let zero = ring.zero();
                        (*x == if alpha { one.clone() } else { zero.clone() })
                            && (*y == if alpha { zero } else { one })
                    });
                report.push("generators match monomial", matches);
            }
            let asg = Assignment::from_pairs([("a", mats[0].clone()), ("b", mats[1].clone())])?;
            let v = evaluate(&word, &asg)?;
            report.push("w(A,B) = X_(1,n)^sign", v == x1n.pow(w.sign as i64));
        }
    }
    Ok(report)
}
