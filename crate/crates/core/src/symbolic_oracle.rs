//! Symbolic expansion of word values at generic generators.
//!
//! `A` and `B` carry independent variables `α_i`, `β_i` on the superdiagonal
//! and zeros above it; entry `(i, j)` of any word in `A`, `B` is then a
//! multilinear polynomial supported on `[i, j-1]`.

use crate::error::{Error, Result};
use crate::free_words::{Assignment, Evaluator, Word};
use crate::scalar_rings::{Flag, Integer, Monomial, MultilinearPoly, PolyRing};
use crate::unitriangular::UnipotentMatrix;

/// Default bound on the number of terms in one matrix entry.
pub const DEFAULT_TERM_CAP: usize = 1 << 22;

/// The generic pair `A ∈ T_{1,n}(α)`, `B ∈ T_{1,n}(β)`.
#[derive(Debug, Clone)]
pub struct SymbolicPair {
    a: UnipotentMatrix<PolyRing>,
    b: UnipotentMatrix<PolyRing>,
}

impl SymbolicPair {
    pub fn new(n: usize) -> Result<Self> {
        Self::with_offset(n, 1)
    }

    /// The pair whose superdiagonal starts at subscript `first`, i.e. the
    /// principal block at rows `first..first+n-1` of a larger pair.
    pub fn with_offset(n: usize, first: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadDimension(n));
        }
        let diag = |flag| (0..n as u32 - 1).map(|k| MultilinearPoly::variable(first + k, flag)).collect();
        Ok(SymbolicPair {
            a: UnipotentMatrix::from_superdiagonal(PolyRing, diag(Flag::Alpha)),
            b: UnipotentMatrix::from_superdiagonal(PolyRing, diag(Flag::Beta)),
        })
    }

    pub fn n(&self) -> usize {
        self.a.n()
    }

    pub fn a(&self) -> &UnipotentMatrix<PolyRing> {
        &self.a
    }

    pub fn b(&self) -> &UnipotentMatrix<PolyRing> {
        &self.b
    }

    /// `a ↦ A`, `b ↦ B`.
    pub fn assignment(&self) -> Assignment<PolyRing> {
        Assignment::from_pairs([("a", self.a.clone()), ("b", self.b.clone())]).expect("same dimension")
    }
}

/// Entry `(i, j)` of `w(A, B)` in `U_n`.
pub fn entry_poly(w: &Word, n: usize, i: usize, j: usize) -> Result<MultilinearPoly> {
    entry_poly_capped(w, n, i, j, DEFAULT_TERM_CAP)
}

/// [`entry_poly`] with an explicit term cap.
pub fn entry_poly_capped(w: &Word, n: usize, i: usize, j: usize, cap: usize) -> Result<MultilinearPoly> {
    if !(i >= 1 && i < j && j <= n) {
        return Err(Error::BadIndex { n, i, j });
    }
    // rows and columns i..=j form a homomorphic image, so the block is all
    // that has to be computed
    let m = j - i + 1;
    let pair = SymbolicPair::with_offset(m, i as u32)?;
    let assignment = pair.assignment();
    let value = Evaluator::new(&assignment).with_term_cap(cap).evaluate(w)?;
    let p = value.get(1, m).clone();
    let len = (j - i) as u32;
    if p.is_zero() {
        return p.retagged(i as u32, len);
    }
    if p.lo() != i as u32 || p.degree() != len {
        return Err(Error::ConstructionBug(format!("entry ({i}, {j}) has support {}..{}", p.lo(), p.hi())));
    }
    Ok(p)
}

/// Coefficient of `m` in entry `(1, n)` of `w(A, B)`; `m` must cover `[1, n-1]`.
pub fn monomial_coefficient(w: &Word, n: usize, m: &Monomial) -> Result<Integer> {
    if m.lo() != 1 || m.degree() as usize + 1 != n {
        return Err(Error::Mismatch(format!("monomial {m} does not cover [1, {}]", n.saturating_sub(1))));
    }
    Ok(entry_poly(w, n, 1, n)?.coefficient(m))
}

/// Outcome of a successful Multiplication Lemma check.
#[derive(Debug, Clone, PartialEq)]
pub struct LemmaWitness {
    /// `m·ψ_r(m')`.
    pub monomial: Monomial,
    /// `coeff(m)·coeff(m')`, its coefficient in `[w, w']`.
    pub coefficient: Integer,
    pub left_coefficient: Integer,
    pub right_coefficient: Integer,
    /// Whether the coefficient was also read off a full expansion of `[w, w']`.
    pub confirmed_by_expansion: bool,
}

/// Checks that `m·ψ_r(m')` is a summand of `[w, w']`, where `r`, `s` are the
/// weights of `w`, `w'`.
///
/// Both memberships and the hypothesis (the length-`s` prefix of `m` is not
/// a summand of `w'`) are verified by expansion. The product itself is
/// expanded when `r + s` stays within `log2(cap)`.
pub fn multiplication_lemma_check(
    w: &Word,
    w2: &Word,
    m: &Monomial,
    m2: &Monomial,
    cap: usize,
) -> Result<LemmaWitness> {
    let (r, s) = (w.weight(), w2.weight());
    if r < s {
        return Err(Error::BadOrder { r: r as usize, s: s as usize });
    }
    let left = entry_poly_capped(w, r as usize + 1, 1, r as usize + 1, cap)?;
    let right = entry_poly_capped(w2, s as usize + 1, 1, s as usize + 1, cap)?;
    let cm = left.coefficient(m);
    if m.lo() != 1 || m.degree() != r || cm.is_zero() {
        return Err(Error::NotASummand(*m));
    }
    let cm2 = right.coefficient(m2);
    if m2.lo() != 1 || m2.degree() != s || cm2.is_zero() {
        return Err(Error::NotASummand(*m2));
    }
    let prefix = m.prefix(s);
    if !right.coefficient(&prefix).is_zero() {
        return Err(Error::HypothesisViolated(prefix));
    }
    let monomial = m.concat(&m2.shift(r))?;
    let coefficient = &cm * &cm2;
    let total = (r + s) as usize;
    let expand = total < usize::BITS as usize && (1usize << total) <= cap;
    if expand {
        let full = entry_poly_capped(&w.comm(w2), total + 1, 1, total + 1, cap)?;
        let found = full.coefficient(&monomial);
        if found != coefficient {
            return Err(Error::ConstructionBug(format!(
                "{monomial:?} has coefficient {found} in the commutator, expected {coefficient}"
            )));
        }
    }
    Ok(LemmaWitness {
        monomial,
        coefficient,
        left_coefficient: cm,
        right_coefficient: cm2,
        confirmed_by_expansion: expand,
    })
}

/// α-count structure of a polynomial's terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Homogeneity {
    /// Every term has this many `α`s.
    Homogeneous(u32),
    /// The polynomial is zero.
    Empty,
    /// Two terms with different `α`-counts.
    NotHomogeneous(Monomial, Monomial),
}

/// α-count homogeneity of entry `(1, n)` of `w(A, B)`.
pub fn alpha_count_homogeneous(w: &Word, n: usize) -> Result<Homogeneity> {
    let p = entry_poly(w, n, 1, n)?;
    Ok(homogeneity(&p))
}

pub fn homogeneity(p: &MultilinearPoly) -> Homogeneity {
    let mut terms = p.terms();
    let Some((first, _)) = terms.next() else {
        return Homogeneity::Empty;
    };
    let k = first.alpha_count();
    match terms.find(|(m, _)| m.alpha_count() != k) {
        Some((other, _)) => Homogeneity::NotHomogeneous(first, other),
        None => Homogeneity::Homogeneous(k),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_words::families::{c10, c5, c5_partner, left_normed};

    fn mono(s: &str) -> Monomial {
        s.parse().unwrap()
    }

    #[test]
    fn single_commutator() {
        let ba = left_normed(&["b", "a"]).unwrap();
        let p = entry_poly(&ba, 3, 1, 3).unwrap();
        assert_eq!(p.to_text(), "1*ba@1\n-1*ab@1");
        let q = entry_poly(&ba, 5, 3, 5).unwrap();
        assert_eq!(q, p.shift(2));
        let z = entry_poly(&ba, 5, 2, 3).unwrap();
        assert!(z.is_zero());
        assert_eq!((z.lo(), z.degree()), (2, 1));
        assert!(matches!(entry_poly(&ba, 3, 2, 2), Err(Error::BadIndex { .. })));
    }

    #[test]
    fn c5_spot_values() {
        let w = c5();
        assert_eq!(monomial_coefficient(&w, 6, &mono("aabab")).unwrap(), Integer::from(-1));
        assert_eq!(monomial_coefficient(&w, 6, &mono("aaabb")).unwrap(), Integer::ZERO);
        assert_eq!(alpha_count_homogeneous(&w, 6).unwrap(), Homogeneity::Homogeneous(3));
        assert!(monomial_coefficient(&w, 7, &mono("aabab")).is_err());
    }

    #[test]
    fn lemma_on_c10() {
        let wit = multiplication_lemma_check(&c5_partner(), &c5(), &mono("bbaab"), &mono("aabba"), DEFAULT_TERM_CAP)
            .unwrap();
        assert_eq!(wit.monomial, mono("bbaabaabba"));
        assert!(wit.confirmed_by_expansion);
        assert!(wit.coefficient == Integer::ONE || wit.coefficient == Integer::from(-1));
        assert_eq!(monomial_coefficient(&c10(), 11, &wit.monomial).unwrap(), wit.coefficient);
    }

    #[test]
    fn lemma_errors() {
        let ba = left_normed(&["b", "a"]).unwrap();
        let m = mono("ba");
        assert_eq!(
            multiplication_lemma_check(&ba, &ba, &m, &m, DEFAULT_TERM_CAP).unwrap_err(),
            Error::HypothesisViolated(m)
        );
        assert!(matches!(
            multiplication_lemma_check(&ba, &c5(), &m, &mono("aabab"), DEFAULT_TERM_CAP),
            Err(Error::BadOrder { r: 2, s: 5 })
        ));
        assert!(matches!(
            multiplication_lemma_check(&ba, &ba, &mono("aa"), &m, DEFAULT_TERM_CAP),
            Err(Error::NotASummand(_))
        ));
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(entry_poly_capped(&c5(), 6, 1, 6, 4), Err(Error::CapExceeded { .. })));
    }
}
