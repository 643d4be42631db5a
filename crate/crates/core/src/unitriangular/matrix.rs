use std::fmt;

use crate::error::{Error, Result};
use crate::scalar_rings::Ring;

/// An `n×n` upper unitriangular matrix over `R`.
///
/// Only the strict upper triangle is stored, row by row. Indices in the public
/// interface are 1-based: entry `(i, j)` with `1 ≤ i < j ≤ n`.
#[derive(Clone)]
pub struct UnipotentMatrix<R: Ring> {
    ring: R,
    n: usize,
    entries: Vec<R::Elem>,
}

/// Offset of row `i` (1-based) inside the packed strict upper triangle.
#[inline]
pub(crate) fn row_offset(n: usize, i: usize) -> usize {
    (i - 1) * n - (i - 1) * i / 2
}

#[inline]
fn idx(n: usize, i: usize, j: usize) -> usize {
    row_offset(n, i) + (j - i - 1)
}

pub(crate) fn packed_len(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// The nonzero products `a[i,k]·b[k,j]`, `i < k < j`, of two packed strict
/// upper triangles.
fn nonzero_pairs<'a, R: Ring>(
    ring: &'a R,
    a: &'a [R::Elem],
    b: &'a [R::Elem],
    n: usize,
    i: usize,
    j: usize,
) -> impl Iterator<Item = (&'a R::Elem, &'a R::Elem)> + 'a {
    let oi = row_offset(n, i);
    (i + 1..j).filter_map(move |k| {
        let x = &a[oi + k - i - 1];
        if ring.is_zero(x) {
            return None;
        }
        let y = &b[idx(n, k, j)];
        if ring.is_zero(y) {
            None
        } else {
            Some((x, y))
        }
    })
}

impl<R: Ring> UnipotentMatrix<R> {
    pub fn identity(ring: R, n: usize) -> Self {
        assert!(n >= 1, "dimension must be positive");
        let zero = ring.zero();
        UnipotentMatrix { entries: vec![zero; packed_len(n)], ring, n }
    }

    /// `X_{i,j}`: the identity with an extra 1 at `(i, j)`.
    pub fn transvection(ring: R, n: usize, i: usize, j: usize) -> Result<Self> {
        Self::check_index(n, i, j)?;
        let mut m = Self::identity(ring, n);
        let one = m.ring.one();
        m.set(i, j, one);
        Ok(m)
    }

    pub fn from_entries<I>(ring: R, n: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, R::Elem)>,
    {
        if n == 0 {
            return Err(Error::BadIndex { n, i: 0, j: 0 });
        }
        let mut m = Self::identity(ring, n);
        for (i, j, v) in entries {
            Self::check_index(n, i, j)?;
            m.set(i, j, v);
        }
        Ok(m)
    }

    /// Identity plus the given superdiagonal `(s_1, …, s_{n-1})`.
    pub fn from_superdiagonal(ring: R, values: Vec<R::Elem>) -> Self {
        let n = values.len() + 1;
        let mut m = Self::identity(ring, n);
        for (k, v) in values.into_iter().enumerate() {
            m.set(k + 1, k + 2, v);
        }
        m
    }

    fn check_index(n: usize, i: usize, j: usize) -> Result<()> {
        if i >= 1 && i < j && j <= n {
            Ok(())
        } else {
            Err(Error::BadIndex { n, i, j })
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub(crate) fn packed(&self) -> &[R::Elem] {
        &self.entries
    }

    /// Strict upper entry; panics unless `1 ≤ i < j ≤ n`.
    pub fn get(&self, i: usize, j: usize) -> &R::Elem {
        assert!(i >= 1 && i < j && j <= self.n, "entry ({i}, {j}) outside strict upper triangle");
        &self.entries[idx(self.n, i, j)]
    }

    /// Any entry, including the unit diagonal and the zero lower triangle.
    pub fn entry(&self, i: usize, j: usize) -> R::Elem {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.get(i, j).clone(),
            std::cmp::Ordering::Equal => self.ring.one(),
            std::cmp::Ordering::Greater => self.ring.zero(),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: R::Elem) {
        assert!(i >= 1 && i < j && j <= self.n, "entry ({i}, {j}) outside strict upper triangle");
        let k = idx(self.n, i, j);
        self.entries[k] = v;
    }

    pub fn superdiagonal(&self) -> Vec<R::Elem> {
        (1..self.n).map(|i| self.get(i, i + 1).clone()).collect()
    }

    /// Entries `(i, i+r)` for `i = 1..n-r`.
    pub fn diagonal_at(&self, r: usize) -> Vec<R::Elem> {
        (1..=self.n.saturating_sub(r)).map(|i| self.get(i, i + r).clone()).collect()
    }

    /// Nonzero strict-upper entries in row-major order.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, &R::Elem)> + '_ {
        (1..self.n)
            .flat_map(move |i| (i + 1..=self.n).map(move |j| (i, j)))
            .zip(self.entries.iter())
            .filter(|(_, v)| !self.ring.is_zero(v))
            .map(|((i, j), v)| (i, j, v))
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().all(|v| self.ring.is_zero(v))
    }

    /// Largest `k ≤ n` with `self ∈ γ_k(U_n)`; the identity gives `n`.
    pub fn gamma_index(&self) -> usize {
        (1..self.n)
            .find(|&r| (1..=self.n - r).any(|i| !self.ring.is_zero(self.get(i, i + r))))
            .unwrap_or(self.n)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Mismatch(format!("dimensions {} and {}", self.n, other.n)));
        }
        if self.ring != other.ring {
            return Err(Error::Mismatch(format!("rings {:?} and {:?}", self.ring, other.ring)));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.mul_range(other, 1, self.n))
    }

    /// Product restricted to entries at distance `lo ≤ j-i < hi`; all other
    /// entries of the result are zero. Callers guarantee the entries below
    /// `lo` vanish; entries from `hi` on are dropped, which is the quotient
    /// map `U_n → U_n/γ_hi`.
    pub(crate) fn mul_range(&self, other: &Self, lo: usize, hi: usize) -> Self {
        let n = self.n;
        let ring = &self.ring;
        let (a, b) = (&self.entries, &other.entries);
        let mut out = vec![ring.zero(); packed_len(n)];
        let hi = hi.min(n);
        for i in 1..n {
            let oi = row_offset(n, i);
            for j in (i + lo.max(1))..=(i + hi - 1).min(n) {
                let base = ring.add(&a[oi + j - i - 1], &b[oi + j - i - 1]);
                out[oi + j - i - 1] = ring.dot(base, nonzero_pairs(ring, a, b, n, i, j));
            }
        }
        UnipotentMatrix { ring: ring.clone(), n, entries: out }
    }

    /// Exact inverse by back substitution.
    pub fn inverse(&self) -> Self {
        self.inverse_below(self.n)
    }

    pub(crate) fn inverse_below(&self, hi: usize) -> Self {
        let n = self.n;
        let ring = &self.ring;
        let a = &self.entries;
        let mut out = vec![ring.zero(); packed_len(n)];
        for d in 1..hi.min(n) {
            for i in 1..=n - d {
                let j = i + d;
                let oi = row_offset(n, i);
                let base = a[oi + d - 1].clone();
                let pairs = (i + 1..j).filter_map(|k| {
                    let x = &a[oi + k - i - 1];
                    if ring.is_zero(x) {
                        return None;
                    }
                    let y = &out[idx(n, k, j)];
                    if ring.is_zero(y) {
                        None
                    } else {
                        Some((x, y))
                    }
                });
                let s = ring.dot(base, pairs);
                out[oi + d - 1] = ring.neg(&s);
            }
        }
        UnipotentMatrix { ring: ring.clone(), n, entries: out }
    }

    /// `[A, B] = A⁻¹B⁻¹AB`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.commutator_range(other, 1, self.n))
    }

    /// Commutator modulo `γ_hi`, skipping result entries below distance `lo`
    /// (which the caller knows vanish).
    ///
    /// Uses `[A, B] = I + (BA)⁻¹(AB − BA)`: the bracket `AB − BA` is only
    /// formed at distances `lo..hi`, and `(BA)⁻¹` is only needed modulo
    /// `γ_{hi-lo}`.
    pub(crate) fn commutator_range(&self, other: &Self, lo: usize, hi: usize) -> Self {
        let n = self.n;
        let hi = hi.min(n);
        let lo = lo.max(1);
        if lo >= hi {
            return Self::identity(self.ring.clone(), n);
        }
        let ring = &self.ring;
        let (a, b) = (&self.entries, &other.entries);
        let mut d = vec![ring.zero(); packed_len(n)];
        for i in 1..n {
            let oi = row_offset(n, i);
            for j in (i + lo)..=(i + hi - 1).min(n) {
                let ab = ring.dot(ring.zero(), nonzero_pairs(ring, a, b, n, i, j));
                let ba = ring.dot(ring.zero(), nonzero_pairs(ring, b, a, n, i, j));
                d[oi + j - i - 1] = ring.sub(&ab, &ba);
            }
        }
        let prec = hi - lo;
        if prec <= 1 {
            return UnipotentMatrix { ring: ring.clone(), n, entries: d };
        }
        let v = other.mul_range(self, 1, prec).inverse_below(prec);
        let mut out = vec![ring.zero(); packed_len(n)];
        for i in 1..n {
            let oi = row_offset(n, i);
            for j in (i + lo)..=(i + hi - 1).min(n) {
                let base = d[oi + j - i - 1].clone();
                out[oi + j - i - 1] = ring.dot(base, nonzero_pairs(ring, &v.entries, &d, n, i, j));
            }
        }
        UnipotentMatrix { ring: ring.clone(), n, entries: out }
    }

    /// `A^k` for any integer `k`.
    pub fn pow(&self, k: i64) -> Self {
        let mut base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::identity(self.ring.clone(), self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_range(&base, 1, self.n);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_range(&base, 1, self.n);
            }
        }
        acc
    }

    /// Entries at distance `≥ hi` set to zero (image in `U_n/γ_hi`).
    pub fn truncated(&self, hi: usize) -> Self {
        let mut m = self.clone();
        for i in 1..self.n {
            for j in (i + hi.max(1)).min(self.n + 1)..=self.n {
                m.set(i, j, self.ring.zero());
            }
        }
        m
    }

    /// Principal block on rows and columns `i..=j`, a homomorphic image in `U_{j-i+1}`.
    pub fn block(&self, i: usize, j: usize) -> Result<Self> {
        if !(i >= 1 && i <= j && j <= self.n) {
            return Err(Error::BadIndex { n: self.n, i, j });
        }
        let m = j - i + 1;
        let mut out = Self::identity(self.ring.clone(), m);
        for r in 1..m {
            for c in r + 1..=m {
                out.set(r, c, self.get(i + r - 1, i + c - 1).clone());
            }
        }
        Ok(out)
    }

    /// The corner map `π: U_{2n-1} → U_n × U_n`: upper-left and lower-right
    /// `n×n` blocks, overlapping at the middle diagonal entry.
    pub fn project_pi(&self) -> Result<(Self, Self)> {
        if self.n < 3 || self.n.is_multiple_of(2) {
            return Err(Error::BadDimension(self.n));
        }
        let half = self.n.div_ceil(2);
        Ok((self.block(1, half)?, self.block(half, self.n)?))
    }

    /// Preimage of `(left, right)` under `π` with zeros in the free
    /// top-right `(n-1)×(n-1)` block.
    pub fn lift_pi(left: &Self, right: &Self) -> Result<Self> {
        left.check_compatible(right)?;
        let n = left.n;
        if n < 2 {
            return Err(Error::BadDimension(n));
        }
        let m = 2 * n - 1;
        let mut out = Self::identity(left.ring.clone(), m);
        for (i, j, v) in left.nonzero_entries() {
            out.set(i, j, v.clone());
        }
        for (i, j, v) in right.nonzero_entries() {
            out.set(i + n - 1, j + n - 1, v.clone());
        }
        Ok(out)
    }

    /// Same entries, each mapped through `f` into another ring.
    pub fn map_ring<S: Ring>(&self, ring: S, f: impl Fn(&R::Elem) -> S::Elem) -> UnipotentMatrix<S> {
        UnipotentMatrix { n: self.n, entries: self.entries.iter().map(f).collect(), ring }
    }
}

impl<R: Ring> PartialEq for UnipotentMatrix<R> {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.ring == other.ring && self.entries == other.entries
    }
}

impl<R: Ring> fmt::Debug for UnipotentMatrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "U{}{{", self.n)?;
        for (k, (i, j, v)) in self.nonzero_entries().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({i},{j}):{}", self.ring.format(v).replace('\n', " + "))?;
        }
        write!(f, "}}")
    }
}
