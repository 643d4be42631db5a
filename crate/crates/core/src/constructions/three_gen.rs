use num_traits::One;

use crate::error::{Error, Result};
use crate::free_words::{build_w, evaluate, Assignment, Word};
use crate::scalar_rings::{solve_circulant, CirculantSolution, Integer, Ring, RingSpec};
use crate::unitriangular::UnipotentMatrix;

/// Three generators of `U_n`, `n = 2^{d-1} + 1`, with a word `w` such that
/// `w(A,B,C) = X_{1,n}` while `w(B,C,A) = w(C,A,B) = I`.
#[derive(Debug, Clone)]
pub struct TripleWitness<R: Ring> {
    pub d: u32,
    pub n: usize,
    pub a: UnipotentMatrix<R>,
    pub b: UnipotentMatrix<R>,
    pub c: UnipotentMatrix<R>,
    pub word: Word,
    pub base_exponents: (i64, i64, i64),
}

impl<R: Ring> TripleWitness<R> {
    /// The values `(w(A,B,C), w(B,C,A), w(C,A,B))`.
    pub fn cyclic_values(&self) -> Result<[UnipotentMatrix<R>; 3]> {
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let at = |x: &UnipotentMatrix<R>, y: &UnipotentMatrix<R>, z: &UnipotentMatrix<R>| {
            let asg = Assignment::from_pairs([("x1", x.clone()), ("x2", y.clone()), ("x3", z.clone())])?;
            evaluate(&self.word, &asg)
        };
        Ok([at(a, b, c)?, at(b, c, a)?, at(c, a, b)?])
    }
}

/// Superdiagonal values `(a, b, c)` of the `2×2` base generators.
fn base_values<R: Ring>(ring: &R, (r, s, t): (i64, i64, i64)) -> Result<[R::Elem; 3]> {
    match ring.spec() {
        Some(RingSpec::Fp { p }) => match solve_circulant(r, s, t, p)? {
            CirculantSolution::Modular { values, .. } => Ok(values.map(|v| ring.from_i64(v as i64))),
            CirculantSolution::Rational(_) => unreachable!("prime modulus gives a modular solution"),
        },
        Some(RingSpec::Int) => match solve_circulant(r, s, t, 0)? {
            CirculantSolution::Rational(values) => {
                if values.iter().any(|q| !q.denom().is_one()) {
                    return Err(Error::Unsupported(format!(
                        "base exponents ({r},{s},{t}) have no integral solution"
                    )));
                }
                Ok(values.map(|q| ring.from_integer(&Integer::from_big(q.numer().clone()))))
            }
            CirculantSolution::Modular { .. } => unreachable!("p = 0 gives a rational solution"),
        },
        None => Err(Error::Unsupported("three-generator constructions need a numeric ring".into())),
    }
}

/// Builds and checks the triple for depth `d`.
pub fn three_gen_triple<R: Ring>(d: u32, ring: R, rst: (i64, i64, i64)) -> Result<TripleWitness<R>> {
    let word = build_w(d, rst)?;
    let [x, y, z] = base_values(&ring, rst)?;
    let gen = |v: R::Elem| UnipotentMatrix::from_superdiagonal(ring.clone(), vec![v]);
    let (mut a, mut b, mut c) = (gen(x), gen(y), gen(z));
    for _ in 1..d {
        let next = (
            UnipotentMatrix::lift_pi(&a, &b)?,
            UnipotentMatrix::lift_pi(&b, &c)?,
            UnipotentMatrix::lift_pi(&c, &a)?,
        );
        (a, b, c) = next;
    }
    let n = a.n();
    let witness = TripleWitness { d, n, a, b, c, word, base_exponents: rst };
    let [v0, v1, v2] = witness.cyclic_values()?;
    let target = UnipotentMatrix::transvection(ring.clone(), n, 1, n)?;
    if v0 != target || !v1.is_identity() || !v2.is_identity() {
        return Err(Error::ConstructionBug(format!("three-generator triple fails at d = {d}")));
    }
    if witness.word.depth() + 1 < d {
        return Err(Error::ConstructionBug(format!("depth certificate {} below {}", witness.word.depth(), d - 1)));
    }
    Ok(witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar_rings::{Integers, PrimeField};

    #[test]
    fn small_depths() {
        let t = three_gen_triple(1, Integers, (1, 0, 0)).unwrap();
        assert_eq!(t.a, UnipotentMatrix::transvection(Integers, 2, 1, 2).unwrap());
        assert!(t.b.is_identity() && t.c.is_identity());
        assert_eq!(t.word, Word::gen("x1"));

        let t = three_gen_triple(2, Integers, (1, 0, 0)).unwrap();
        assert_eq!(t.a, UnipotentMatrix::transvection(Integers, 3, 1, 2).unwrap());
        assert!(t.b.is_identity());
        assert_eq!(t.c, UnipotentMatrix::transvection(Integers, 3, 2, 3).unwrap());
        assert_eq!(t.a.commutator(&t.c).unwrap(), UnipotentMatrix::transvection(Integers, 3, 1, 3).unwrap());
    }

    #[test]
    fn depth_four_over_f2() {
        let t = three_gen_triple(4, PrimeField::new(2).unwrap(), (1, 0, 0)).unwrap();
        assert_eq!((t.n, t.word.depth()), (9, 3));
    }

    #[test]
    fn general_base() {
        let f5 = PrimeField::new(5).unwrap();
        let t = three_gen_triple(3, f5, (1, 1, 0)).unwrap();
        assert_eq!(t.n, 5);
        assert_eq!(
            three_gen_triple(3, PrimeField::new(3).unwrap(), (1, 1, 1)).unwrap_err(),
            Error::SingularBaseCase
        );
        assert!(matches!(three_gen_triple(2, Integers, (1, 1, 0)), Err(Error::Unsupported(_))));
        assert!(three_gen_triple(3, Integers, (2, 1, 0)).is_err());
        let t = three_gen_triple(3, Integers, (1, 0, 0)).unwrap();
        assert_eq!(t.base_exponents, (1, 0, 0));
    }
}
