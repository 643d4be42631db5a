//! Multilinear polynomials in `α_i`, `β_i` with consecutive support.
//!
//! Every monomial over the interval `[lo, hi]` picks exactly one of `α_i`,
//! `β_i` for each subscript, so it is a bit pattern: bit `t` describes
//! subscript `lo + t`, with `0` for `α` and `1` for `β`. A polynomial is a
//! sorted list of `(pattern, coefficient)` pairs sharing one interval.
//!
//! Text form of a term: `coef*pattern@lo`, e.g. `-1*aabab@1` for
//! `-α_1α_2β_3α_4β_5`.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use super::{Integer, Ring, RingSpec};
use crate::error::{Error, Result};

/// Largest supported number of subscripts in one interval.
pub const MAX_DEGREE: u32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flag {
    Alpha,
    Beta,
}

impl Flag {
    fn bit(self) -> u64 {
        match self {
            Flag::Alpha => 0,
            Flag::Beta => 1,
        }
    }

    fn letter(self) -> char {
        match self {
            Flag::Alpha => 'a',
            Flag::Beta => 'b',
        }
    }
}

#[inline]
fn mask(len: u32) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

/// A product of one variable per subscript in `[lo, lo + len)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    lo: u32,
    len: u32,
    pattern: u64,
}

impl Monomial {
    pub fn new(lo: u32, len: u32, pattern: u64) -> Result<Self> {
        if len > MAX_DEGREE {
            return Err(Error::Unsupported(format!("monomial degree {len} exceeds {MAX_DEGREE}")));
        }
        if pattern & !mask(len) != 0 {
            return Err(Error::Parse(format!("pattern {pattern:#b} wider than {len} subscripts")));
        }
        Ok(Monomial { lo, len, pattern })
    }

    pub fn from_flags(lo: u32, flags: &[Flag]) -> Result<Self> {
        let mut pattern = 0u64;
        if flags.len() > MAX_DEGREE as usize {
            return Err(Error::Unsupported(format!("monomial degree {} exceeds {MAX_DEGREE}", flags.len())));
        }
        for (t, f) in flags.iter().enumerate() {
            pattern |= f.bit() << t;
        }
        Monomial::new(lo, flags.len() as u32, pattern)
    }

    pub fn lo(&self) -> u32 {
        self.lo
    }

    /// Last subscript (`lo - 1` for the empty monomial).
    pub fn hi(&self) -> i64 {
        self.lo as i64 + self.len as i64 - 1
    }

    pub fn degree(&self) -> u32 {
        self.len
    }

    pub fn pattern(&self) -> u64 {
        self.pattern
    }

    pub fn flag(&self, subscript: u32) -> Option<Flag> {
        if subscript < self.lo || subscript >= self.lo + self.len {
            return None;
        }
        Some(if self.pattern >> (subscript - self.lo) & 1 == 1 {
            Flag::Beta
        } else {
            Flag::Alpha
        })
    }

    pub fn flags(&self) -> Vec<Flag> {
        (self.lo..self.lo + self.len).map(|s| self.flag(s).unwrap()).collect()
    }

    pub fn alpha_count(&self) -> u32 {
        self.len - self.pattern.count_ones()
    }

    pub fn beta_count(&self) -> u32 {
        self.pattern.count_ones()
    }

    /// Subscripts carrying `flag`, ascending.
    pub fn subscripts(&self, flag: Flag) -> Vec<u32> {
        (self.lo..self.lo + self.len).filter(|&s| self.flag(s) == Some(flag)).collect()
    }

    /// `ψ_r`: add `r` to every subscript.
    pub fn shift(&self, r: u32) -> Monomial {
        Monomial { lo: self.lo + r, ..*self }
    }

    /// The first `k` variables.
    pub fn prefix(&self, k: u32) -> Monomial {
        let k = k.min(self.len);
        Monomial { lo: self.lo, len: k, pattern: self.pattern & mask(k) }
    }

    /// Product of monomials on adjacent intervals (`self` first).
    pub fn concat(&self, other: &Monomial) -> Result<Monomial> {
        if self.hi() + 1 != other.lo as i64 {
            return Err(interval_error(self.lo, self.len, other.lo, other.len));
        }
        Monomial::new(self.lo, self.len + other.len, self.pattern | (other.pattern << self.len))
    }

    /// The `[ab]*` string without position, e.g. `aabab`.
    pub fn pattern_string(&self) -> String {
        self.flags().into_iter().map(Flag::letter).collect()
    }

    /// Parses `aabab` (support starting at 1) or `aabab@lo`.
    pub fn parse_pattern(s: &str) -> Result<Monomial> {
        let s = s.trim();
        let (pat, lo) = match s.split_once('@') {
            Some((p, lo)) => (
                p,
                lo.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad subscript in `{s}`")))?,
            ),
            None => (s, 1),
        };
        let flags = pat
            .chars()
            .map(|c| match c {
                'a' | 'A' => Ok(Flag::Alpha),
                'b' | 'B' => Ok(Flag::Beta),
                _ => Err(Error::Parse(format!("bad monomial pattern `{s}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Monomial::from_flags(lo, &flags)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.pattern_string(), self.lo)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.lo..self.lo + self.len {
            let c = if self.flag(s) == Some(Flag::Alpha) { 'α' } else { 'β' };
            write!(f, "{c}{s}")?;
        }
        if self.len == 0 {
            write!(f, "1")?;
        }
        Ok(())
    }
}

impl FromStr for Monomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Monomial::parse_pattern(s)
    }
}

fn interval_error(lo1: u32, len1: u32, lo2: u32, len2: u32) -> Error {
    Error::IntervalMismatch {
        lhs_lo: lo1 as i64,
        lhs_hi: lo1 as i64 + len1 as i64 - 1,
        rhs_lo: lo2 as i64,
        rhs_hi: lo2 as i64 + len2 as i64 - 1,
    }
}

/// Integer-coefficient sum of monomials over one shared interval.
///
/// Terms are sorted by pattern and carry nonzero coefficients. The zero
/// polynomial keeps its interval tag, which equality ignores. A polynomial
/// with an empty interval is a constant and multiplies like a scalar.
#[derive(Clone)]
pub struct MultilinearPoly {
    lo: u32,
    len: u32,
    terms: Vec<(u64, Integer)>,
}

impl PartialEq for MultilinearPoly {
    fn eq(&self, other: &Self) -> bool {
        match (self.terms.is_empty(), other.terms.is_empty()) {
            (true, true) => true,
            (false, false) => self.lo == other.lo && self.len == other.len && self.terms == other.terms,
            _ => false,
        }
    }
}

impl Eq for MultilinearPoly {}

impl Hash for MultilinearPoly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        if !self.terms.is_empty() {
            self.lo.hash(state);
            self.len.hash(state);
        }
        self.terms.hash(state);
    }
}

impl MultilinearPoly {
    pub fn zero(lo: u32, len: u32) -> Self {
        MultilinearPoly { lo, len, terms: Vec::new() }
    }

    pub fn constant(c: Integer) -> Self {
        let terms = if c.is_zero() { Vec::new() } else { vec![(0, c)] };
        MultilinearPoly { lo: 1, len: 0, terms }
    }

    pub fn from_monomial(m: Monomial, coef: Integer) -> Self {
        let terms = if coef.is_zero() { Vec::new() } else { vec![(m.pattern, coef)] };
        MultilinearPoly { lo: m.lo, len: m.len, terms }
    }

    /// The single variable `α_i` or `β_i`.
    pub fn variable(subscript: u32, flag: Flag) -> Self {
        MultilinearPoly { lo: subscript, len: 1, terms: vec![(flag.bit(), Integer::ONE)] }
    }

    /// Builds from arbitrary `(monomial, coefficient)` pairs over `[lo, lo+len)`.
    pub fn from_terms<I>(lo: u32, len: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, Integer)>,
    {
        let mut raw = Vec::new();
        for (m, c) in terms {
            if m.lo != lo || m.len != len {
                return Err(interval_error(lo, len, m.lo, m.len));
            }
            raw.push((m.pattern, c));
        }
        Ok(MultilinearPoly { lo, len, terms: normalize(raw) })
    }

    pub fn lo(&self) -> u32 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo as i64 + self.len as i64 - 1
    }

    pub fn degree(&self) -> u32 {
        self.len
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.len == 0
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &Integer)> + '_ {
        let (lo, len) = (self.lo, self.len);
        self.terms.iter().map(move |(p, c)| (Monomial { lo, len, pattern: *p }, c))
    }

    /// Same polynomial carrying interval tag `[lo, lo+len)`; only valid to
    /// retag zero polynomials.
    pub fn retagged(mut self, lo: u32, len: u32) -> Result<Self> {
        if !self.is_zero() && (self.lo != lo || self.len != len) {
            return Err(interval_error(self.lo, self.len, lo, len));
        }
        self.lo = lo;
        self.len = len;
        Ok(self)
    }

    pub fn coefficient(&self, m: &Monomial) -> Integer {
        if m.lo != self.lo || m.len != self.len {
            return Integer::ZERO;
        }
        match self.terms.binary_search_by_key(&m.pattern, |(p, _)| *p) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Integer::ZERO,
        }
    }

    fn same_interval(&self, other: &Self) -> bool {
        (self.len == 0 && other.len == 0) || (self.lo == other.lo && self.len == other.len)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if !self.same_interval(other) {
            return Err(interval_error(self.lo, self.len, other.lo, other.len));
        }
        Ok(MultilinearPoly { lo: self.lo, len: self.len, terms: merge(&self.terms, &other.terms, false) })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.neg());
        }
        if !self.same_interval(other) {
            return Err(interval_error(self.lo, self.len, other.lo, other.len));
        }
        Ok(MultilinearPoly { lo: self.lo, len: self.len, terms: merge(&self.terms, &other.terms, true) })
    }

    pub fn neg(&self) -> Self {
        MultilinearPoly {
            lo: self.lo,
            len: self.len,
            terms: self.terms.iter().map(|(p, c)| (*p, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Integer) -> Self {
        if c.is_zero() {
            return MultilinearPoly::zero(self.lo, self.len);
        }
        MultilinearPoly {
            lo: self.lo,
            len: self.len,
            terms: self.terms.iter().map(|(p, x)| (*p, x * c)).collect(),
        }
    }

    /// Product of polynomials on adjacent intervals, in either order.
    ///
    /// A zero factor gives zero and a constant factor scales; otherwise the
    /// supports must abut.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.is_constant() {
            let c = self.terms.first().map(|t| t.1.clone()).unwrap_or(Integer::ZERO);
            return Ok(other.scale(&c));
        }
        if other.is_constant() {
            let c = other.terms.first().map(|t| t.1.clone()).unwrap_or(Integer::ZERO);
            return Ok(self.scale(&c));
        }
        let (first, second) = if self.hi() + 1 == other.lo as i64 {
            (self, other)
        } else if other.hi() + 1 == self.lo as i64 {
            (other, self)
        } else if self.is_zero() || other.is_zero() {
            let lo = self.lo.min(other.lo);
            return Ok(MultilinearPoly::zero(lo, (self.len + other.len).min(MAX_DEGREE)));
        } else {
            return Err(interval_error(self.lo, self.len, other.lo, other.len));
        };
        let len = first.len + second.len;
        if len > MAX_DEGREE {
            return Err(Error::Unsupported(format!("product degree {len} exceeds {MAX_DEGREE}")));
        }
        let mut terms = Vec::with_capacity(first.terms.len() * second.terms.len());
        first.append_product(second, &mut terms);
        Ok(MultilinearPoly { lo: first.lo, len, terms })
    }

    /// Appends the terms of `self * other` (`other` directly after `self`);
    /// the appended run is sorted by pattern.
    fn append_product(&self, other: &Self, out: &mut Vec<(u64, Integer)>) {
        let a = self.len;
        for (q, cq) in &other.terms {
            let high = q << a;
            for (p, cp) in &self.terms {
                out.push((p | high, cp * cq));
            }
        }
    }

    /// `ψ_r`.
    pub fn shift(&self, r: u32) -> Self {
        MultilinearPoly { lo: self.lo + r, len: self.len, terms: self.terms.clone() }
    }

    /// Value at the 0/1 point that sets exactly the listed variables to 1.
    ///
    /// `ones` must name exactly one flag for every subscript of the interval.
    pub fn eval01(&self, ones: &[(u32, Flag)]) -> Result<Integer> {
        let mut seen = 0u64;
        let mut pattern = 0u64;
        for &(s, f) in ones {
            if s < self.lo || s >= self.lo + self.len {
                return Err(Error::IncompleteAssignment(format!(
                    "subscript {s} outside [{}, {}]",
                    self.lo,
                    self.hi()
                )));
            }
            let bit = 1u64 << (s - self.lo);
            if seen & bit != 0 {
                return Err(Error::IncompleteAssignment(format!("subscript {s} assigned twice")));
            }
            seen |= bit;
            pattern |= f.bit() << (s - self.lo);
        }
        if seen != mask(self.len) {
            let missing = (0..self.len).find(|t| seen >> t & 1 == 0).unwrap() + self.lo;
            return Err(Error::IncompleteAssignment(format!("subscript {missing} unassigned")));
        }
        Ok(self.coefficient(&Monomial { lo: self.lo, len: self.len, pattern }))
    }

    /// Distinct alpha counts occurring among the terms, ascending.
    pub fn alpha_counts(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.terms.iter().map(|(p, _)| self.len - p.count_ones()).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// One `coef*pattern@lo` line per term.
    pub fn to_text(&self) -> String {
        self.text_lines().join("\n")
    }

    pub fn text_lines(&self) -> Vec<String> {
        self.terms().map(|(m, c)| format!("{c}*{m}")).collect()
    }

    /// Parses the text form. Empty input is rejected since it carries no
    /// interval; use [`MultilinearPoly::zero`] for that.
    pub fn parse_text(s: &str) -> Result<Self> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty()).peekable();
        let mut terms = Vec::new();
        let mut interval = None;
        for line in lines.by_ref() {
            let (c, m) = line
                .split_once('*')
                .ok_or_else(|| Error::Parse(format!("term `{line}` lacks `*`")))?;
            let c: Integer = c.parse()?;
            let m: Monomial = m.parse()?;
            interval.get_or_insert((m.lo, m.len));
            terms.push((m, c));
        }
        let (lo, len) = interval.ok_or_else(|| Error::Parse("empty polynomial text".into()))?;
        MultilinearPoly::from_terms(lo, len, terms)
    }
}

fn normalize(mut raw: Vec<(u64, Integer)>) -> Vec<(u64, Integer)> {
    // stable sort: runs produced by `append_product` are already sorted
    raw.sort_by_key(|t| t.0);
    let mut out: Vec<(u64, Integer)> = Vec::with_capacity(raw.len());
    for (p, c) in raw {
        match out.last_mut() {
            Some((q, acc)) if *q == p => acc.add_assign_ref(&c),
            _ => {
                if let Some((_, acc)) = out.last() {
                    if acc.is_zero() {
                        out.pop();
                    }
                }
                out.push((p, c));
            }
        }
    }
    if matches!(out.last(), Some((_, c)) if c.is_zero()) {
        out.pop();
    }
    out
}

fn merge(a: &[(u64, Integer)], b: &[(u64, Integer)], subtract: bool) -> Vec<(u64, Integer)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            let c = if subtract { -&b[j].1 } else { b[j].1.clone() };
            out.push((b[j].0, c));
            j += 1;
        } else {
            let c = if subtract { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
            if !c.is_zero() {
                out.push((a[i].0, c));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl fmt::Display for MultilinearPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        write!(f, "{}", self.text_lines().join(" + "))
    }
}

impl fmt::Debug for MultilinearPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0[{}..{}]", self.lo, self.hi());
        }
        for (k, (m, c)) in self.terms().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            if c.signum() >= 0 {
                write!(f, "+")?;
            }
            write!(f, "{c}{m:?}")?;
        }
        Ok(())
    }
}

/// Matrix-coefficient ring of multilinear polynomials.
///
/// Entry `(i, j)` of a symbolic matrix is supported on `[i, j-1]`, and every
/// product the matrix kernel forms is of adjacent supports, so the ring
/// operations here panic on an interval mismatch: it can only come from a
/// malformed matrix.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PolyRing;

impl Ring for PolyRing {
    type Elem = MultilinearPoly;

    fn zero(&self) -> MultilinearPoly {
        MultilinearPoly::zero(1, 0)
    }
    fn one(&self) -> MultilinearPoly {
        MultilinearPoly::constant(Integer::ONE)
    }
    fn from_integer(&self, v: &Integer) -> MultilinearPoly {
        MultilinearPoly::constant(v.clone())
    }
    fn is_zero(&self, a: &MultilinearPoly) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &MultilinearPoly, b: &MultilinearPoly) -> MultilinearPoly {
        a.try_add(b).expect("symbolic matrix entries on mismatched intervals")
    }
    fn sub(&self, a: &MultilinearPoly, b: &MultilinearPoly) -> MultilinearPoly {
        a.try_sub(b).expect("symbolic matrix entries on mismatched intervals")
    }
    fn neg(&self, a: &MultilinearPoly) -> MultilinearPoly {
        a.neg()
    }
    fn mul(&self, a: &MultilinearPoly, b: &MultilinearPoly) -> MultilinearPoly {
        a.mul(b).expect("symbolic matrix entries on mismatched intervals")
    }

    fn dot<'a, I>(&self, base: MultilinearPoly, pairs: I) -> MultilinearPoly
    where
        I: Iterator<Item = (&'a MultilinearPoly, &'a MultilinearPoly)>,
    {
        let mut lo = base.lo;
        let mut len = base.len;
        let mut has_interval = !base.is_zero();
        let mut raw = base.terms;
        let mut general = Vec::new();
        for (a, b) in pairs {
            if a.is_zero() || b.is_zero() {
                continue;
            }
            if a.is_constant() || b.is_constant() || a.hi() + 1 != b.lo as i64 {
                general.push(self.mul(a, b));
                continue;
            }
            let (plo, plen) = (a.lo, a.len + b.len);
            if has_interval {
                assert!(
                    plo == lo && plen == len,
                    "symbolic matrix entries on mismatched intervals"
                );
            } else {
                lo = plo;
                len = plen;
                has_interval = true;
            }
            a.append_product(b, &mut raw);
        }
        let mut acc = MultilinearPoly { lo, len, terms: normalize(raw) };
        for g in general {
            acc = self.add(&acc, &g);
        }
        acc
    }

    fn term_count(&self, a: &MultilinearPoly) -> usize {
        a.num_terms()
    }

    fn spec(&self) -> Option<RingSpec> {
        None
    }

    fn format(&self, a: &MultilinearPoly) -> String {
        a.to_text()
    }

    fn parse(&self, s: &str) -> Result<MultilinearPoly> {
        MultilinearPoly::parse_text(s)
    }
}
