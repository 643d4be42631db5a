//! The word families used by the constructions.

use super::Word;
use crate::error::{Error, Result};

/// Largest depth accepted by [`build_two_gen_word`].
pub const MAX_TWO_GEN_DEPTH: u32 = 12;

/// Largest depth accepted by [`build_w`].
pub const MAX_THREE_GEN_DEPTH: u32 = 24;

/// `[g_1, g_2, …, g_k]` on generator names.
pub fn left_normed(names: &[&str]) -> Result<Word> {
    let parts: Vec<Word> = names.iter().map(|n| Word::gen(n)).collect();
    Word::left_normed_of(&parts)
}

fn ln(names: &[&str]) -> Word {
    left_normed(names).expect("at least two names")
}

/// The rotation `w(x_1, x_2, x_3) ↦ w(x_3, x_1, x_2)`.
pub fn rotate(w: &Word) -> Result<Word> {
    w.rename(&[("x1", "x3"), ("x2", "x1"), ("x3", "x2")])
}

/// `w_n` for `n = 2^{d-1} + 1`: `w_2 = x_1^r x_2^s x_3^t` and
/// `w_{2n-1} = [w_n, w_n(x_3, x_1, x_2)]`.
pub fn build_w(d: u32, rst: (i64, i64, i64)) -> Result<Word> {
    if d == 0 || d > MAX_THREE_GEN_DEPTH {
        return Err(Error::Unsupported(format!("depth {d} outside 1..={MAX_THREE_GEN_DEPTH}")));
    }
    let base = base_word(rst)?;
    // the three rotations of the current word, kept together so that every
    // level adds three shared nodes
    let mut w = [base.clone(), rotate(&base)?, rotate(&rotate(&base)?)?];
    for _ in 1..d {
        w = [w[0].comm(&w[1]), w[1].comm(&w[2]), w[2].comm(&w[0])];
    }
    Ok(w[0].clone())
}

fn base_word((r, s, t): (i64, i64, i64)) -> Result<Word> {
    let mut parts = Vec::new();
    for (name, e) in [("x1", r), ("x2", s), ("x3", t)] {
        if e != 0 {
            parts.push(Word::gen(name).pow(e)?);
        }
    }
    let mut it = parts.into_iter();
    let first = it.next().ok_or(Error::SingularBaseCase)?;
    Ok(it.fold(first, |acc, w| acc.prod(&w)))
}

/// `c_5 = [[b,a,a],[b,a]]`.
pub fn c5() -> Word {
    ln(&["b", "a", "a"]).comm(&ln(&["b", "a"]))
}

/// `[[b,a,b],[b,a]]`, the other weight-5 generator.
pub fn c5_partner() -> Word {
    ln(&["b", "a", "b"]).comm(&ln(&["b", "a"]))
}

/// `c_10 = [[[b,a,b],[b,a]], c_5]`.
pub fn c10() -> Word {
    c5_partner().comm(&c5())
}

/// `(c_21, c'_21, c''_21)`, built on `[b,a,a,a]`, `[b,a,a,b]` and `[b,a,b,b]`.
pub fn c21_triple() -> [Word; 3] {
    let ba = ln(&["b", "a"]);
    let (c5, c10) = (c5(), c10());
    let make = |head: &[&str]| ln(head).comm(&ba).comm(&c5).comm(&c10);
    [make(&["b", "a", "a", "a"]), make(&["b", "a", "a", "b"]), make(&["b", "a", "b", "b"])]
}

/// One step `(u, u', u'') ↦ ([u', u''], [u'', u], [u, u'])`.
pub fn cyclic_step(t: &[Word; 3]) -> [Word; 3] {
    [t[1].comm(&t[2]), t[2].comm(&t[0]), t[0].comm(&t[1])]
}

/// The word triple at `level ≥ 5`, of weight `21·2^{level-5}` each.
pub fn two_gen_triple(level: u32) -> Result<[Word; 3]> {
    if !(5..=MAX_TWO_GEN_DEPTH).contains(&level) {
        return Err(Error::Unsupported(format!("triple level {level} outside 5..={MAX_TWO_GEN_DEPTH}")));
    }
    let mut t = c21_triple();
    for _ in 5..level {
        t = cyclic_step(&t);
    }
    Ok(t)
}

/// Component `k` of the family at depth `d`; components only differ from
/// `d = 5` on.
pub fn two_gen_component(d: u32, k: usize) -> Result<Word> {
    if k > 2 {
        return Err(Error::Unsupported(format!("component {k} (expected 0, 1 or 2)")));
    }
    match d {
        3 | 4 if k != 0 => Err(Error::Unsupported(format!("depth {d} has a single word"))),
        3 => Ok(c5()),
        4 => Ok(c10()),
        5..=MAX_TWO_GEN_DEPTH => Ok(two_gen_triple(d)?[k].clone()),
        _ => Err(Error::Unsupported(format!("depth {d} outside 3..={MAX_TWO_GEN_DEPTH}"))),
    }
}

/// The designated two-generator word of depth `d` (component 0).
pub fn build_two_gen_word(d: u32) -> Result<Word> {
    two_gen_component(d, 0)
}

/// `[[[g1,g2],[g3,g4]],[[g5,g6],[g7,g8]]]`, which sends `g_k ↦ X_{k,k+1}` to `X_{1,9}`.
pub fn nested_word() -> Word {
    let g = |k: usize| Word::gen(&format!("g{k}"));
    let l = g(1).comm(&g(2)).comm(&g(3).comm(&g(4)));
    let r = g(5).comm(&g(6)).comm(&g(7).comm(&g(8)));
    l.comm(&r)
}

/// Looks up a family name such as `c5`, `c10`, `c21'`, `d7` (the depth-7
/// designated word) or `d7''`.
pub fn named(name: &str) -> Option<Word> {
    let primes = name.chars().rev().take_while(|&c| c == '\'').count();
    let stem = &name[..name.len() - primes];
    match stem {
        "c5" if primes == 0 => Some(c5()),
        "c10" if primes == 0 => Some(c10()),
        "c21" => c21_triple().get(primes).cloned(),
        "nested" if primes == 0 => Some(nested_word()),
        _ => {
            let d: u32 = stem.strip_prefix('d')?.parse().ok()?;
            two_gen_component(d, primes).ok()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn left_normed_weights() {
        assert_eq!(left_normed(&["b", "a"]).unwrap().weight(), 2);
        let w = left_normed(&["b", "a", "a", "a"]).unwrap();
        assert_eq!((w.weight(), w.depth()), (4, 1));
        assert_eq!(w.to_string(), "(comm b a a a)");
        assert_eq!(left_normed(&["b"]).unwrap_err(), Error::TooShort);
    }

    #[test]
    fn three_gen_words() {
        assert_eq!(build_w(1, (1, 0, 0)).unwrap(), Word::gen("x1"));
        assert_eq!(build_w(2, (1, 0, 0)).unwrap(), Word::parse("(comm x1 x3)").unwrap());
        assert_eq!(
            build_w(3, (1, 0, 0)).unwrap(),
            Word::parse("(comm (comm x1 x3) (comm x3 x2))").unwrap()
        );
        let w = build_w(9, (1, 0, 0)).unwrap();
        assert_eq!((w.weight(), w.depth()), (256, 8));
        assert!(w.dag_size() <= 3 * 9);
        assert_eq!(rotate(&Word::parse("(comm x1 x3)").unwrap()).unwrap(), Word::parse("(comm x3 x2)").unwrap());
        assert!(build_w(0, (1, 0, 0)).is_err());
        assert!(build_w(2, (0, 0, 0)).is_err());
        let g = build_w(2, (1, 1, 0)).unwrap();
        assert_eq!(g, Word::parse("(comm (prod x1 x2) (prod x3 x1))").unwrap());
    }

    #[test]
    fn two_gen_words() {
        let w = build_two_gen_word(3).unwrap();
        assert_eq!((w.weight(), w.depth()), (5, 2));
        assert_eq!(w.to_string(), "(comm (comm b a a) (comm b a))");
        let w = build_two_gen_word(4).unwrap();
        assert_eq!((w.weight(), w.depth()), (10, 3));
        for k in 0..3 {
            let w = two_gen_component(5, k).unwrap();
            assert_eq!((w.weight(), w.depth()), (21, 4));
        }
        let w = build_two_gen_word(6).unwrap();
        assert_eq!(w.weight(), 42);
        assert!(w.depth() >= 5);
        let [u, v, x] = c21_triple();
        assert_eq!(w, v.comm(&x));
        assert_ne!(u, v);
        let w = build_two_gen_word(12).unwrap();
        assert_eq!(w.weight(), 21 << 7);
        assert!(w.dag_size() < 100);
        assert!(build_two_gen_word(2).is_err());
        assert!(build_two_gen_word(13).is_err());
        assert!(two_gen_component(4, 1).is_err());
    }

    #[test]
    fn names() {
        assert_eq!(named("c5"), Some(c5()));
        assert_eq!(named("c21''"), Some(c21_triple()[2].clone()));
        assert_eq!(named("d6'"), Some(two_gen_triple(6).unwrap()[1].clone()));
        assert_eq!(named("d4"), Some(c10()));
        assert_eq!(named("c21'''"), None);
        assert_eq!(named("zz"), None);
        assert_eq!(nested_word().weight(), 8);
    }
}
