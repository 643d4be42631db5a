//! Base case of the three-generator recursion for a general exponent triple.
//!
//! With `w = x1^r x2^s x3^t` and superdiagonal entries `a, b, c` of the three
//! `2×2` generators, the three cyclic evaluations of `w` are the linear forms
//! `ra+sb+tc`, `rb+sc+ta`, `rc+sa+tb`. Asking for `(1, 0, 0)` is a circulant
//! system with determinant `r³+s³+t³−3rst`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::PrimeField;
use crate::error::{Error, Result};

pub fn circulant_determinant(r: i64, s: i64, t: i64) -> BigInt {
    let (r, s, t) = (BigInt::from(r), BigInt::from(s), BigInt::from(t));
    &r * &r * &r + &s * &s * &s + &t * &t * &t - BigInt::from(3) * &r * &s * &t
}

#[derive(Debug, Clone, PartialEq)]
pub enum CirculantSolution {
    /// Solution in `F_p`.
    Modular { p: u32, values: [u32; 3] },
    /// Solution over the rationals.
    Rational([BigRational; 3]),
}

/// Solves for `(a, b, c)` over `F_p`, or over `ℚ` when `p == 0`.
pub fn solve_circulant(r: i64, s: i64, t: i64, p: u32) -> Result<CirculantSolution> {
    let det = circulant_determinant(r, s, t);
    // first column of the adjugate
    let cof = [
        BigInt::from(r) * r - BigInt::from(s) * t,
        BigInt::from(s) * s - BigInt::from(r) * t,
        BigInt::from(t) * t - BigInt::from(r) * s,
    ];
    if p == 0 {
        if det.is_zero() {
            return Err(Error::SingularBaseCase);
        }
        let values = cof.map(|c| BigRational::new(c, det.clone()));
        return Ok(CirculantSolution::Rational(values));
    }
    let field = PrimeField::new(p)?;
    let bp = BigInt::from(p);
    let reduce = |x: &BigInt| -> u32 {
        let m = ((x % &bp) + &bp) % &bp;
        u32::try_from(m).expect("residue below p")
    };
    let inv = field.inv(reduce(&det)).ok_or(Error::SingularBaseCase)?;
    let values = cof.map(|c| ((reduce(&c) as u64 * inv as u64) % p as u64) as u32);
    Ok(CirculantSolution::Modular { p, values })
}
