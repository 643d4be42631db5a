use super::UnipotentMatrix;
use crate::error::{Error, Result};
use crate::scalar_rings::Ring;

/// The coset `T_{r,n}(τ_1, …, τ_{n-r})` of `γ_{r+1}(U_n)`: matrices vanishing
/// at distances `1..r` with `τ_i` at `(i, i+r)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CosetPattern<R: Ring> {
    ring: R,
    n: usize,
    level: usize,
    tau: Vec<R::Elem>,
}

impl<R: Ring> CosetPattern<R> {
    pub fn new(ring: R, n: usize, level: usize, tau: Vec<R::Elem>) -> Result<Self> {
        if level == 0 || level >= n {
            return Err(Error::LevelOverflow { sum: level, n });
        }
        if tau.len() != n - level {
            return Err(Error::Mismatch(format!(
                "level-{level} pattern in dimension {n} needs {} values, got {}",
                n - level,
                tau.len()
            )));
        }
        Ok(CosetPattern { ring, n, level, tau })
    }

    /// The distance-`level` diagonal of `m`.
    pub fn of_matrix(m: &UnipotentMatrix<R>, level: usize) -> Result<Self> {
        Self::new(m.ring().clone(), m.n(), level, m.diagonal_at(level))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn tau(&self) -> &[R::Elem] {
        &self.tau
    }

    pub fn is_zero(&self) -> bool {
        self.tau.iter().all(|t| self.ring.is_zero(t))
    }

    /// The member with zeros above the distance-`level` diagonal.
    pub fn representative(&self) -> UnipotentMatrix<R> {
        let entries = self.tau.iter().enumerate().map(|(k, t)| (k + 1, k + 1 + self.level, t.clone()));
        UnipotentMatrix::from_entries(self.ring.clone(), self.n, entries).expect("indices in range")
    }

    pub fn contains(&self, m: &UnipotentMatrix<R>) -> bool {
        m.n() == self.n
            && m.gamma_index() >= self.level
            && m.diagonal_at(self.level) == self.tau
    }

    /// Pattern of `[S, T]` for `S ∈ T_{r,n}(α)`, `T ∈ T_{s,n}(β)`:
    /// `τ'_i = α_i β_{i+r} − α_{i+s} β_i` at level `r+s`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        if self.n != other.n || self.ring != other.ring {
            return Err(Error::Mismatch("coset patterns over different groups".into()));
        }
        let (r, s, n) = (self.level, other.level, self.n);
        if r + s >= n {
            return Err(Error::LevelOverflow { sum: r + s, n });
        }
        let ring = &self.ring;
        let (alpha, beta) = (&self.tau, &other.tau);
        let tau = (0..n - r - s)
            .map(|i| ring.sub(&ring.mul(&alpha[i], &beta[i + r]), &ring.mul(&alpha[i + s], &beta[i])))
            .collect();
        Self::new(ring.clone(), n, r + s, tau)
    }
}
