use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::free_words::families::{two_gen_component, MAX_TWO_GEN_DEPTH};
use crate::free_words::{evaluate, Assignment, Word};
use crate::scalar_rings::{Flag, Monomial, Ring};
use crate::unitriangular::UnipotentMatrix;

/// A monomial supported on `[1, len]` with no bound on `len`.
///
/// [`Monomial`] packs its pattern into 64 bits, which is enough for every
/// polynomial the oracle can expand; the tracked monomials of the
/// two-generator recursion outgrow it from depth 7 on.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LongMonomial {
    flags: Vec<Flag>,
}

impl LongMonomial {
    pub fn new(flags: Vec<Flag>) -> Self {
        LongMonomial { flags }
    }

    pub fn flags(&self) -> &[Flag] {
        &self.flags
    }

    pub fn degree(&self) -> usize {
        self.flags.len()
    }

    pub fn alpha_count(&self) -> usize {
        self.flags.iter().filter(|&&f| f == Flag::Alpha).count()
    }

    /// `self · ψ_{deg(self)}(other)`.
    pub fn concat(&self, other: &LongMonomial) -> LongMonomial {
        let mut flags = self.flags.clone();
        flags.extend_from_slice(&other.flags);
        LongMonomial { flags }
    }

    /// 1-based subscripts carrying `flag`.
    pub fn subscripts(&self, flag: Flag) -> Vec<usize> {
        (1..=self.flags.len()).filter(|&s| self.flags[s - 1] == flag).collect()
    }

    /// The packed form, when it fits.
    pub fn to_monomial(&self) -> Result<Monomial> {
        Monomial::from_flags(1, &self.flags)
    }
}

impl From<Monomial> for LongMonomial {
    fn from(m: Monomial) -> Self {
        assert_eq!(m.lo(), 1, "tracked monomials start at subscript 1");
        LongMonomial { flags: m.flags() }
    }
}

impl fmt::Display for LongMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for flag in &self.flags {
            f.write_str(if *flag == Flag::Alpha { "a" } else { "b" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for LongMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LongMonomial({self})")
    }
}

impl FromStr for LongMonomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let s = s.strip_suffix("@1").unwrap_or(s);
        let flags = s
            .chars()
            .map(|c| match c {
                'a' | 'A' => Ok(Flag::Alpha),
                'b' | 'B' => Ok(Flag::Beta),
                _ => Err(Error::Parse(format!("bad monomial pattern `{s}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        if flags.is_empty() {
            return Err(Error::Parse("empty monomial pattern".into()));
        }
        Ok(LongMonomial { flags })
    }
}

fn pat(s: &str) -> LongMonomial {
    s.parse().expect("static pattern")
}

/// `α_1α_2β_3α_4β_5`, coefficient −1 in `c_5`.
pub fn m5_c5() -> (LongMonomial, i8) {
    (pat("aabab"), -1)
}

/// `m_5 = β_1β_2α_3α_4β_5` in `[[b,a,b],[b,a]]` and `m'_5 = α_1α_2β_3β_4α_5`
/// in `c_5`, both with coefficient +1.
pub fn m5_pair() -> [(LongMonomial, i8); 2] {
    [(pat("bbaab"), 1), (pat("aabba"), 1)]
}

/// `m_10 = m_5 ψ_5(m'_5)`, coefficient +1 in `c_10`.
pub fn m10() -> (LongMonomial, i8) {
    let [(m5, s), (m5p, t)] = m5_pair();
    (m5.concat(&m5p), s * t)
}

/// The tracked monomials of `(c_21, c'_21, c''_21)` with their coefficients.
///
/// Each is a weight-6 head from `[[b,a,a,a],[b,a]]` (resp. `[b,a,a,b]`,
/// `[b,a,b,b]`), then `ψ_6(m'_5)`, then `ψ_11(m_10)`.
pub fn m21_triple() -> MonomialTriple {
    let [_, (m5p, _)] = m5_pair();
    let (m10, _) = m10();
    let tail = m5p.concat(&m10);
    let heads = [("aaabba", -1), ("aabbba", 1), ("bbbaab", -1)];
    MonomialTriple { level: 5, monos: heads.map(|(h, s)| (pat(h).concat(&tail), s)) }
}

/// Three tracked monomials (with signs) for the word triple of one level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialTriple {
    pub level: u32,
    pub monos: [(LongMonomial, i8); 3],
}

impl MonomialTriple {
    pub fn alpha_counts(&self) -> [usize; 3] {
        self.monos.each_ref().map(|(m, _)| m.alpha_count())
    }

    /// α-counts modulo 3 are pairwise distinct.
    pub fn residues_distinct(&self) -> bool {
        let [x, y, z] = self.alpha_counts().map(|k| k % 3);
        x != y && y != z && x != z
    }

    /// `(m'ψ(m''), m''ψ(m), mψ(m'))` with multiplied signs.
    pub fn step(&self) -> MonomialTriple {
        let [(m0, s0), (m1, s1), (m2, s2)] = &self.monos;
        MonomialTriple {
            level: self.level + 1,
            monos: [(m1.concat(m2), s1 * s2), (m2.concat(m0), s2 * s0), (m0.concat(m1), s0 * s1)],
        }
    }
}

/// The monomial triple after `steps` applications of the cyclic rule,
/// checking distinct α-residues at every level on the way.
pub fn monomial_recursion(steps: u32) -> Result<MonomialTriple> {
    let mut t = m21_triple();
    for _ in 0..steps {
        if !t.residues_distinct() {
            return Err(Error::DistinctnessViolated(t.level));
        }
        t = t.step();
    }
    if !t.residues_distinct() {
        return Err(Error::DistinctnessViolated(t.level));
    }
    Ok(t)
}

/// Tracked monomial and sign of component `k` at depth `d`.
pub fn tracked_monomial(d: u32, k: usize) -> Result<(LongMonomial, i8)> {
    match (d, k) {
        (3, 0) => Ok(m5_c5()),
        (4, 0) => Ok(m10()),
        (5..=MAX_TWO_GEN_DEPTH, 0..=2) => Ok(monomial_recursion(d - 5)?.monos[k].clone()),
        _ => Err(Error::Unsupported(format!("no component {k} at depth {d}"))),
    }
}

/// Two generators of `U_n` with a word evaluating to `X_{1,n}^{sign}`.
#[derive(Debug, Clone)]
pub struct PairWitness<R: Ring> {
    pub d: u32,
    pub n: usize,
    pub component: usize,
    pub a: UnipotentMatrix<R>,
    pub b: UnipotentMatrix<R>,
    pub word: Word,
    pub monomial: LongMonomial,
    pub sign: i8,
}

/// The 0/1 generators read off a tracked monomial: `A` has 1 at the `α`
/// subscripts of its superdiagonal, `B` at the `β` subscripts.
pub fn pair_from_monomial<R: Ring>(ring: &R, m: &LongMonomial) -> (UnipotentMatrix<R>, UnipotentMatrix<R>) {
    let diag = |want: Flag| m.flags().iter().map(|&f| ring.from_i64((f == want) as i64)).collect();
    (
        UnipotentMatrix::from_superdiagonal(ring.clone(), diag(Flag::Alpha)),
        UnipotentMatrix::from_superdiagonal(ring.clone(), diag(Flag::Beta)),
    )
}

/// The designated pair (component 0) at depth `d`.
pub fn two_gen_pair<R: Ring>(d: u32, ring: R) -> Result<PairWitness<R>> {
    two_gen_pair_component(d, 0, ring)
}

/// Component `k` of the pair family at depth `d`, checked by evaluation.
pub fn two_gen_pair_component<R: Ring>(d: u32, k: usize, ring: R) -> Result<PairWitness<R>> {
    let word = two_gen_component(d, k)?;
    let (monomial, sign) = tracked_monomial(d, k)?;
    let n = monomial.degree() + 1;
    if word.weight() as usize != n - 1 {
        return Err(Error::ConstructionBug(format!("word weight {} against dimension {n}", word.weight())));
    }
    if word.depth() + 1 < d {
        return Err(Error::ConstructionBug(format!("depth certificate {} below {}", word.depth(), d - 1)));
    }
    let (a, b) = pair_from_monomial(&ring, &monomial);
    let asg = Assignment::from_pairs([("a", a.clone()), ("b", b.clone())])?;
    let value = evaluate(&word, &asg)?;
    let target = UnipotentMatrix::transvection(ring, n, 1, n)?.pow(sign as i64);
    if value != target {
        return Err(Error::ConstructionBug(format!("depth-{d} pair does not evaluate to X_(1,{n})^{sign}")));
    }
    Ok(PairWitness { d, n, component: k, a, b, word, monomial, sign })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar_rings::{Integers, PrimeField};

    #[test]
    fn depth_three_matches_the_c5_point() {
        let w = two_gen_pair(3, Integers).unwrap();
        assert_eq!(w.n, 6);
        assert_eq!(w.sign, -1);
        let one = |v: &[i64]| v.iter().map(|&x| crate::scalar_rings::Integer::from(x)).collect::<Vec<_>>();
        assert_eq!(w.a.superdiagonal(), one(&[1, 1, 0, 1, 0]));
        assert_eq!(w.b.superdiagonal(), one(&[0, 0, 1, 0, 1]));
    }

    #[test]
    fn depth_four_and_five() {
        let w = two_gen_pair(4, PrimeField::new(3).unwrap()).unwrap();
        assert_eq!(w.n, 11);
        assert_eq!(w.monomial.subscripts(Flag::Beta), vec![1, 2, 5, 8, 9]);
        let w = two_gen_pair(5, Integers).unwrap();
        assert_eq!(w.n, 22);
        assert_eq!(w.monomial.subscripts(Flag::Alpha), vec![1, 2, 3, 6, 7, 8, 11, 14, 15, 17, 18, 21]);
        for k in 1..3 {
            assert_eq!(two_gen_pair_component(5, k, Integers).unwrap().n, 22);
        }
    }

    #[test]
    fn recursion_bookkeeping() {
        let t = monomial_recursion(0).unwrap();
        assert_eq!(t.alpha_counts(), [12, 11, 10]);
        assert_eq!(t.monos.each_ref().map(|m| m.1), [-1, 1, -1]);
        let t1 = monomial_recursion(1).unwrap();
        assert_eq!(t1.monos[0].0, t.monos[1].0.concat(&t.monos[2].0));
        assert!(t1.monos.iter().all(|(m, _)| m.degree() == 42));
        let t4 = monomial_recursion(4).unwrap();
        assert!(t4.monos.iter().all(|(m, _)| m.degree() == 21 << 4));
    }

    #[test]
    fn long_monomial_text() {
        let m: LongMonomial = "aabab".parse().unwrap();
        assert_eq!(m.to_string(), "aabab");
        assert_eq!(m.to_monomial().unwrap().to_string(), "aabab@1");
        assert!("".parse::<LongMonomial>().is_err());
        assert!("abc".parse::<LongMonomial>().is_err());
    }
}
