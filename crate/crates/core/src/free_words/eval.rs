use std::collections::HashMap;

use super::{Kind, Word};
use crate::error::{Error, Result};
use crate::scalar_rings::Ring;
use crate::unitriangular::UnipotentMatrix;

/// Values for the generators of a word, all in one `U_n(R)`.
#[derive(Debug, Clone)]
pub struct Assignment<R: Ring> {
    ring: R,
    n: usize,
    values: HashMap<String, UnipotentMatrix<R>>,
}

impl<R: Ring> Assignment<R> {
    pub fn new(ring: R, n: usize) -> Self {
        Assignment { ring, n, values: HashMap::new() }
    }

    /// Builds from `(name, matrix)` pairs; the first matrix fixes `n` and the ring.
    pub fn from_pairs<I, S>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, UnipotentMatrix<R>)>,
        S: Into<String>,
    {
        let mut it = pairs.into_iter().peekable();
        let (ring, n) = match it.peek() {
            Some((_, m)) => (m.ring().clone(), m.n()),
            None => return Err(Error::Mismatch("empty assignment".into())),
        };
        let mut a = Assignment::new(ring, n);
        for (name, m) in it {
            a.insert(name, m)?;
        }
        Ok(a)
    }

    pub fn insert(&mut self, name: impl Into<String>, m: UnipotentMatrix<R>) -> Result<()> {
        let name = name.into();
        if m.n() != self.n {
            return Err(Error::Mismatch(format!("`{name}` has dimension {}, expected {}", m.n(), self.n)));
        }
        if *m.ring() != self.ring {
            return Err(Error::Mismatch(format!("`{name}` is over a different ring")));
        }
        self.values.insert(name, m);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&UnipotentMatrix<R>> {
        self.values.get(name)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }
}

/// Evaluates `w` under `a`.
pub fn evaluate<R: Ring>(w: &Word, a: &Assignment<R>) -> Result<UnipotentMatrix<R>> {
    Evaluator::new(a).evaluate(w)
}

struct Cached<R: Ring> {
    precision: usize,
    value: UnipotentMatrix<R>,
    // keeps the node alive so its id stays unique while cached
    _word: Word,
}

/// An evaluation session for one assignment.
///
/// Values of sub-words are cached by node, so words sharing sub-words (or
/// repeated calls) reuse work. Each node is only computed modulo the term
/// `γ_P` of the lower central series that its parents can observe: in
/// `[u, v]` the factor `u` matters only modulo `γ_{P - weight(v)}`.
pub struct Evaluator<'a, R: Ring> {
    assignment: &'a Assignment<R>,
    memo: HashMap<usize, Cached<R>>,
    term_cap: Option<usize>,
}

impl<'a, R: Ring> Evaluator<'a, R> {
    pub fn new(assignment: &'a Assignment<R>) -> Self {
        Evaluator { assignment, memo: HashMap::new(), term_cap: None }
    }

    /// Fails with `CapExceeded` once any entry holds more than `cap` terms.
    pub fn with_term_cap(mut self, cap: usize) -> Self {
        self.term_cap = Some(cap);
        self
    }

    /// Exact value of `w`.
    pub fn evaluate(&mut self, w: &Word) -> Result<UnipotentMatrix<R>> {
        self.evaluate_mod(w, self.assignment.n())
    }

    /// Value of `w` modulo `γ_precision`: entries at distance `≥ precision`
    /// are zero.
    pub fn evaluate_mod(&mut self, w: &Word, precision: usize) -> Result<UnipotentMatrix<R>> {
        let n = self.assignment.n();
        let precision = precision.min(n);
        let order = w.post_order();
        let mut need: HashMap<usize, usize> = HashMap::with_capacity(order.len());
        need.insert(w.id(), precision);
        for node in order.iter().rev() {
            let p = need.get(&node.id()).copied().unwrap_or(0);
            if p <= node.weight() as usize {
                continue;
            }
            let mut want = |u: &Word, q: usize| {
                let e = need.entry(u.id()).or_insert(0);
                *e = (*e).max(q);
            };
            match node.kind() {
                Kind::Gen(_) => {}
                Kind::Inv(u) => want(u, p),
                Kind::Prod(u, v) => {
                    want(u, p);
                    want(v, p);
                }
                Kind::Comm(u, v) => {
                    want(u, p.saturating_sub(v.weight() as usize));
                    want(v, p.saturating_sub(u.weight() as usize));
                }
            }
        }
        for node in &order {
            let p = need.get(&node.id()).copied().unwrap_or(0);
            if matches!(self.memo.get(&node.id()), Some(c) if c.precision >= p) {
                continue;
            }
            let value = self.compute(node, p)?;
            if let Some(cap) = self.term_cap {
                let ring = self.assignment.ring();
                let largest = value.packed().iter().map(|e| ring.term_count(e)).max().unwrap_or(0);
                if largest > cap {
                    return Err(Error::CapExceeded { what: "terms per entry".into(), size: largest, cap });
                }
            }
            self.memo.insert(node.id(), Cached { precision: p, value, _word: node.clone() });
        }
        let top = &self.memo[&w.id()];
        Ok(if top.precision > precision { top.value.truncated(precision) } else { top.value.clone() })
    }

    fn compute(&self, node: &Word, p: usize) -> Result<UnipotentMatrix<R>> {
        let a = self.assignment;
        let (ring, n) = (a.ring().clone(), a.n());
        let floor = node.weight() as usize;
        if p <= floor {
            return Ok(UnipotentMatrix::identity(ring, n));
        }
        let value = |u: &Word| &self.memo[&u.id()].value;
        Ok(match node.kind() {
            Kind::Gen(name) => {
                let m = a.get(name).ok_or_else(|| Error::Mismatch(format!("generator `{name}` is unassigned")))?;
                if p >= n {
                    m.clone()
                } else {
                    m.truncated(p)
                }
            }
            Kind::Inv(u) => value(u).inverse_below(p),
            Kind::Prod(u, v) => value(u).mul_range(value(v), floor, p),
            Kind::Comm(u, v) => value(u).commutator_range(value(v), floor, p),
        })
    }
}
