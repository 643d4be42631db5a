mod common;

use common::*;
use num_rational::Ratio;
use unitri::constructions::{
    count_good, is_good, m10, m21_triple, m5_pair, proportion_good, three_gen_triple, two_gen_pair,
    two_gen_pair_component, verify, LongMonomial,
};
use unitri::free_words::families::{c10, c21_triple, c5, c5_partner};
use unitri::symbolic_oracle::{multiplication_lemma_check, monomial_coefficient, DEFAULT_TERM_CAP};
use unitri::{Integer, Integers, Ring, UnipotentMatrix, Word};

#[test]
fn triples_over_small_fields() {
    for p in [2u32, 3] {
        for d in 1..=9 {
            let w = three_gen_triple(d, fp(p), (1, 0, 0)).unwrap();
            assert_eq!(w.n, (1 << (d - 1)) + 1);
            assert!(w.word.depth() + 1 >= d);
            let report = verify(&w.to_json().unwrap()).unwrap();
            assert!(report.verified, "p = {p}, d = {d}: {:?}", report.checks);
        }
    }
}

#[test]
fn triples_over_integers() {
    for d in 1..=6 {
        let w = three_gen_triple(d, Integers, (1, 0, 0)).unwrap();
        let [v0, v1, v2] = w.cyclic_values().unwrap();
        assert_eq!(v0, UnipotentMatrix::transvection(Integers, w.n, 1, w.n).unwrap());
        assert!(v1.is_identity() && v2.is_identity());
        assert!(verify(&w.to_json().unwrap()).unwrap().verified);
    }
    let w = three_gen_triple(4, fp(5), (1, 1, 0)).unwrap();
    assert!(verify(&w.to_json().unwrap()).unwrap().verified);
}

fn check_pair<R: Ring>(d: u32, ring: R) -> i8 {
    let w = two_gen_pair(d, ring.clone()).unwrap();
    assert_eq!(w.word.weight() as usize, w.n - 1);
    assert!(w.word.depth() + 1 >= d);
    let report = verify(&w.to_json().unwrap()).unwrap();
    assert!(report.verified, "d = {d} over {ring:?}: {:?}", report.checks);
    w.sign
}

#[test]
fn pairs_across_rings() {
    for d in 3..=8 {
        let s = check_pair(d, Integers);
        for p in [2u32, 3, 5] {
            let t = check_pair(d, fp(p));
            if p > 2 {
                assert_eq!(s, t);
            }
        }
    }
    assert_eq!(check_pair(3, Integers), -1);
}

#[test]
fn every_depth_five_component_is_a_witness() {
    for k in 0..3 {
        let w = two_gen_pair_component(5, k, Integers).unwrap();
        assert_eq!(w.n, 22);
        assert!(verify(&w.to_json().unwrap()).unwrap().verified);
    }
}

fn coeff(w: &Word, n: usize, m: &LongMonomial) -> Integer {
    monomial_coefficient(w, n, &m.to_monomial().unwrap()).unwrap()
}

#[test]
fn tracked_coefficients_by_full_expansion() {
    let [(m5, s5), (m5p, s5p)] = m5_pair();
    assert_eq!(coeff(&c5_partner(), 6, &m5), Integer::from(s5 as i64));
    assert_eq!(coeff(&c5(), 6, &m5p), Integer::from(s5p as i64));
    let (m, s) = m10();
    assert_eq!(coeff(&c10(), 11, &m), Integer::from(s as i64));
    let triple = m21_triple();
    for (w, (m, s)) in c21_triple().iter().zip(triple.monos.iter()) {
        assert_eq!(coeff(w, 22, m), Integer::from(*s as i64));
    }
    assert!(triple.residues_distinct());
}

#[test]
fn lemma_chain_reaches_m10_and_m21() {
    let [(m5, _), (m5p, _)] = m5_pair();
    let (m5, m5p) = (m5.to_monomial().unwrap(), m5p.to_monomial().unwrap());
    let ten = multiplication_lemma_check(&c5_partner(), &c5(), &m5, &m5p, DEFAULT_TERM_CAP).unwrap();
    assert!(ten.confirmed_by_expansion);
    assert_eq!(ten.monomial, m10().0.to_monomial().unwrap());
    let ba = unitri::free_words::families::left_normed(&["b", "a"]).unwrap();
    let heads = [["b", "a", "a", "a"], ["b", "a", "a", "b"], ["b", "a", "b", "b"]];
    let triple = m21_triple();
    for (k, head) in heads.iter().enumerate() {
        let h = unitri::free_words::families::left_normed(head).unwrap().comm(&ba);
        let target = triple.monos[k].0.to_monomial().unwrap();
        let six = multiplication_lemma_check(&h, &c5(), &target.prefix(6), &m5p, DEFAULT_TERM_CAP).unwrap();
        let eleven = six.monomial;
        let w11 = h.comm(&c5());
        let full = multiplication_lemma_check(&w11, &c10(), &eleven, &ten.monomial, DEFAULT_TERM_CAP).unwrap();
        assert_eq!(full.monomial, target);
        assert!(full.confirmed_by_expansion);
        assert_eq!(full.coefficient, Integer::from(triple.monos[k].1 as i64));
    }
}

#[test]
fn proportions() {
    assert_eq!(proportion_good(21), Ratio::new(13, 21));
    let mut count = 0u64;
    let bound = Ratio::new(11u64, 21);
    for n in 1..=1u64 << 20 {
        count += is_good(n) as u64;
        if n.is_power_of_two() || n % 997 == 0 {
            assert_eq!(count_good(n), count, "N = {n}");
        }
        assert!(Ratio::new(count, n) > bound, "N = {n}");
    }
    for d in 6..=20u32 {
        let big_n = 1u64 << d;
        assert_eq!(proportion_good(big_n), Ratio::new(11, 16) + Ratio::new(2, big_n));
    }
    let gaps: Vec<Ratio<u64>> = (6..=20).map(|d| proportion_good((21u64 << d) / 32) - bound).collect();
    assert!(gaps.iter().all(|g| *g > Ratio::new(0, 1)));
    assert!(gaps.windows(2).all(|w| w[1] < w[0]));
    assert!(*gaps.last().unwrap() < Ratio::new(1, 10_000));
}
