use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::scalar_rings::PrimeField;
use crate::unitriangular::UnipotentMatrix;

/// Group elements of `U_n(F_p)` as seen by the finite algorithms.
///
/// Positions `(i, j)` are ordered by distance `j - i`, then by row; the
/// leading position of `x ≠ I` is its first nonzero position in this order.
/// The elements vanishing before a given position form a normal subgroup,
/// and on it the entry at that position is additive.
pub trait GroupElem: Clone + Eq + Hash + Send + Sync + fmt::Debug {
    fn n(&self) -> usize;
    fn p(&self) -> u32;
    fn identity_like(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn inv(&self) -> Self;
    fn is_identity(&self) -> bool;
    /// Index of the leading position (in the order above) and its entry.
    fn leading(&self) -> Option<(usize, u32)>;
    fn to_matrix(&self) -> UnipotentMatrix<PrimeField>;

    fn pow(&self, mut k: u64) -> Self {
        let mut acc = self.identity_like();
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `[x, y] = x⁻¹y⁻¹xy`.
    fn comm(&self, other: &Self) -> Self {
        self.inv().mul(&other.inv()).mul(&self.mul(other))
    }
}

/// Number of positions in `U_n`.
pub fn position_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Index of position `(i, i + d)` (0-based row `i`).
#[inline]
fn position_index(n: usize, d: usize, i: usize) -> usize {
    // distances 1..d-1 contribute n-1, n-2, …, n-d+1 positions
    (d - 1) * n - d * (d - 1) / 2 + i
}

/// Largest dimension handled by [`F2Matrix`].
pub const F2_MAX_N: usize = 16;

/// A matrix of `U_n(F_2)`, `n ≤ 16`, with one bit row per matrix row
/// (diagonal bits included).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct F2Matrix {
    n: u8,
    rows: [u16; F2_MAX_N],
}

impl F2Matrix {
    pub fn identity(n: usize) -> Self {
        assert!((1..=F2_MAX_N).contains(&n), "F2Matrix supports 1 ≤ n ≤ {F2_MAX_N}");
        let mut rows = [0u16; F2_MAX_N];
        for (i, r) in rows.iter_mut().enumerate().take(n) {
            *r = 1 << i;
        }
        F2Matrix { n: n as u8, rows }
    }

    pub fn from_matrix(m: &UnipotentMatrix<PrimeField>) -> Result<Self> {
        if m.ring().modulus() != 2 {
            return Err(Error::Mismatch("F2Matrix needs entries in F_2".into()));
        }
        if m.n() > F2_MAX_N {
            return Err(Error::Unsupported(format!("dimension {} above {F2_MAX_N}", m.n())));
        }
        let mut x = Self::identity(m.n());
        for (i, j, _) in m.nonzero_entries() {
            x.rows[i - 1] |= 1 << (j - 1);
        }
        Ok(x)
    }

    /// Strict upper entries from a bit string, row-major (bit 0 is `(1, 2)`).
    pub fn from_bits(n: usize, mut bits: u128) -> Self {
        let mut x = Self::identity(n);
        for i in 0..n {
            for j in i + 1..n {
                x.rows[i] |= ((bits & 1) as u16) << j;
                bits >>= 1;
            }
        }
        x
    }

    /// `X_{i,j}`, 1-based.
    pub fn transvection(n: usize, i: usize, j: usize) -> Self {
        assert!(1 <= i && i < j && j <= n, "bad position ({i}, {j})");
        let mut x = Self::identity(n);
        x.rows[i - 1] |= 1 << (j - 1);
        x
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i - 1] >> (j - 1) & 1 == 1
    }
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_matrix())
    }
}

impl GroupElem for F2Matrix {
    fn n(&self) -> usize {
        self.n as usize
    }

    fn p(&self) -> u32 {
        2
    }

    fn identity_like(&self) -> Self {
        Self::identity(self.n as usize)
    }

    fn mul(&self, other: &Self) -> Self {
        let mut rows = [0u16; F2_MAX_N];
        for (i, out) in rows.iter_mut().enumerate().take(self.n as usize) {
            let mut bits = self.rows[i];
            let mut acc = 0u16;
            while bits != 0 {
                let k = bits.trailing_zeros() as usize;
                acc ^= other.rows[k];
                bits &= bits - 1;
            }
            *out = acc;
        }
        F2Matrix { n: self.n, rows }
    }

    fn inv(&self) -> Self {
        let n = self.n as usize;
        let mut rows = [0u16; F2_MAX_N];
        for i in (0..n).rev() {
            let mut strict = self.rows[i] & !(1 << i);
            let mut acc = 1u16 << i;
            while strict != 0 {
                let k = strict.trailing_zeros() as usize;
                acc ^= rows[k];
                strict &= strict - 1;
            }
            rows[i] = acc;
        }
        F2Matrix { n: self.n, rows }
    }

    fn is_identity(&self) -> bool {
        (0..self.n as usize).all(|i| self.rows[i] == 1 << i)
    }

    fn leading(&self) -> Option<(usize, u32)> {
        let n = self.n as usize;
        for d in 1..n {
            for i in 0..n - d {
                if self.rows[i] >> (i + d) & 1 == 1 {
                    return Some((position_index(n, d, i), 1));
                }
            }
        }
        None
    }

    fn to_matrix(&self) -> UnipotentMatrix<PrimeField> {
        let f2 = PrimeField::new(2).expect("2 is prime");
        let n = self.n as usize;
        let mut m = UnipotentMatrix::identity(f2, n);
        for i in 1..n {
            for j in i + 1..=n {
                if self.get(i, j) {
                    m.set(i, j, 1);
                }
            }
        }
        m
    }
}

/// A matrix of `U_n(F_p)` for any supported prime.
#[derive(Clone, PartialEq)]
pub struct FpMatrix(UnipotentMatrix<PrimeField>);

impl FpMatrix {
    pub fn new(m: UnipotentMatrix<PrimeField>) -> Self {
        FpMatrix(m)
    }

    pub fn matrix(&self) -> &UnipotentMatrix<PrimeField> {
        &self.0
    }
}

impl Eq for FpMatrix {}

impl Hash for FpMatrix {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.n().hash(state);
        self.0.packed().hash(state);
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl GroupElem for FpMatrix {
    fn n(&self) -> usize {
        self.0.n()
    }

    fn p(&self) -> u32 {
        self.0.ring().modulus()
    }

    fn identity_like(&self) -> Self {
        FpMatrix(UnipotentMatrix::identity(*self.0.ring(), self.0.n()))
    }

    fn mul(&self, other: &Self) -> Self {
        FpMatrix(self.0.mul(&other.0).expect("same group"))
    }

    fn inv(&self) -> Self {
        FpMatrix(self.0.inverse())
    }

    fn is_identity(&self) -> bool {
        self.0.is_identity()
    }

    fn leading(&self) -> Option<(usize, u32)> {
        let n = self.0.n();
        for d in 1..n {
            for i in 1..=n - d {
                let v = *self.0.get(i, i + d);
                if v != 0 {
                    return Some((position_index(n, d, i - 1), v));
                }
            }
        }
        None
    }

    fn to_matrix(&self) -> UnipotentMatrix<PrimeField> {
        self.0.clone()
    }
}
