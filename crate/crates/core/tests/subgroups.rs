mod common;

use common::*;
use num_bigint::BigUint;
use proptest::prelude::*;
use unitri::constructions::two_gen_pair;
use unitri::free_words::{evaluate, Assignment};
use unitri::group_explorer::{
    search_pairs, F2Matrix, FiniteSubgroup, FpMatrix, GroupElem, PcSubgroup, SearchMode, SearchParams,
    DEFAULT_CLOSURE_CAP,
};
use unitri::{Integers, PrimeField, Ring, UnipotentMatrix, Word};

/// `A = X_{1,2} X_{5,6}`, `B = X_{2,3} X_{3,4}^{-1} X_{4,5}` in `U_6`.
fn example_pair<R: Ring>(ring: R) -> (UnipotentMatrix<R>, UnipotentMatrix<R>) {
    let x = |i, j| UnipotentMatrix::transvection(ring.clone(), 6, i, j).unwrap();
    let a = x(1, 2).mul(&x(5, 6)).unwrap();
    let b = x(2, 3).mul(&x(3, 4).inverse()).unwrap().mul(&x(4, 5)).unwrap();
    (a, b)
}

#[test]
fn example_word_identities() {
    let (a, b) = example_pair(Integers);
    let asg = Assignment::from_pairs([("a", a), ("b", b)]).unwrap();
    let x16 = UnipotentMatrix::transvection(Integers, 6, 1, 6).unwrap();
    let w1 = Word::parse("(comm (comm (comm b a) b) (comm b a))").unwrap();
    let w2 = Word::parse("(comm (comm (comm b a) a) (comm b a))").unwrap();
    assert_eq!(evaluate(&w1, &asg).unwrap(), x16.pow(2));
    assert!(evaluate(&w2, &asg).unwrap().is_identity());
}

#[test]
fn example_orders_and_lengths() {
    for (p, exponent, length) in [(2u32, 7usize, 2usize), (3, 7, 3), (5, 6, 3), (7, 6, 3)] {
        let (a, b) = example_pair(fp(p));
        let (a, b) = (FpMatrix::new(a), FpMatrix::new(b));
        let full = FiniteSubgroup::closure(&a, &[a.clone(), b.clone()], DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(full.order(), (p as usize).pow(exponent as u32), "p = {p}");
        let pc = PcSubgroup::closure(&a, &[a.clone(), b.clone()]).unwrap();
        assert_eq!(pc.order_exponent(), exponent);
        assert_eq!(pc.derived_length(), length, "p = {p}");
        if p <= 3 {
            assert_eq!(full.derived_length(DEFAULT_CLOSURE_CAP).unwrap(), length);
        }
    }
}

#[test]
fn example_lower_central_series_for_large_p() {
    // order p^6 and class 5 in U_6, i.e. maximal class
    for p in [5u32, 7] {
        let (a, b) = example_pair(fp(p));
        let (a, b) = (FpMatrix::new(a), FpMatrix::new(b));
        let g = PcSubgroup::closure(&a, &[a.clone(), b]).unwrap();
        let series: Vec<usize> = g.lower_central_series().iter().map(PcSubgroup::order_exponent).collect();
        assert_eq!(series, vec![6, 4, 3, 2, 1, 0], "p = {p}");
    }
}

#[test]
fn full_transvection_sets() {
    for n in 2..=6usize {
        let gens: Vec<F2Matrix> = (1..n).map(|i| F2Matrix::transvection(n, i, i + 1)).collect();
        let g = FiniteSubgroup::closure(&F2Matrix::identity(n), &gens, DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(g.order(), 1 << (n * (n - 1) / 2));
        let log2 = (n as f64).log2().ceil() as usize;
        assert_eq!(g.derived_length(DEFAULT_CLOSURE_CAP).unwrap(), log2, "n = {n}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn closure_ignores_generator_order(
        gens in prop::collection::vec(fp_matrix(4, 3), 1..=3),
        rot in 0usize..3,
    ) {
        let elems: Vec<FpMatrix> = gens.into_iter().map(FpMatrix::new).collect();
        let mut shuffled = elems.clone();
        shuffled.reverse();
        let k = rot % shuffled.len();
        shuffled.rotate_left(k);
        let g = FiniteSubgroup::closure(&elems[0], &elems, DEFAULT_CLOSURE_CAP).unwrap();
        let h = FiniteSubgroup::closure(&elems[0], &shuffled, DEFAULT_CLOSURE_CAP).unwrap();
        prop_assert_eq!(g.order(), h.order());
        prop_assert!(g.elements().iter().all(|x| h.contains(x)));
        for x in g.elements() {
            prop_assert!(g.contains(&x.inv()));
        }
        prop_assert_eq!(729 % g.order(), 0);
    }
}

#[test]
fn pair_witness_subgroups_have_length_d() {
    for d in [3u32, 4] {
        let w = two_gen_pair(d, fp(2)).unwrap();
        let (a, b) = (F2Matrix::from_matrix(&w.a).unwrap(), F2Matrix::from_matrix(&w.b).unwrap());
        let g = PcSubgroup::closure(&a, &[a, b]).unwrap();
        assert_eq!(g.derived_length(), d as usize, "d = {d}");
    }
    let w = two_gen_pair(3, fp(2)).unwrap();
    let (a, b) = (F2Matrix::from_matrix(&w.a).unwrap(), F2Matrix::from_matrix(&w.b).unwrap());
    let g = FiniteSubgroup::closure(&a, &[a, b], DEFAULT_CLOSURE_CAP).unwrap();
    assert_eq!(g.derived_length(DEFAULT_CLOSURE_CAP).unwrap(), 3);
}

#[test]
fn depth_four_closure_exceeds_the_element_cap() {
    let w = two_gen_pair(4, fp(2)).unwrap();
    let (a, b) = (F2Matrix::from_matrix(&w.a).unwrap(), F2Matrix::from_matrix(&w.b).unwrap());
    let g = PcSubgroup::closure(&a, &[a, b]).unwrap();
    assert!(g.order() > BigUint::from(DEFAULT_CLOSURE_CAP));
    assert!(FiniteSubgroup::closure(&a, &[a, b], DEFAULT_CLOSURE_CAP).is_err());
}

#[test]
fn search_examples() {
    let r = search_pairs(&SearchParams::new(3, 2, SearchMode::Exhaustive, 2)).unwrap();
    assert!(r.witness.is_some());
    assert_eq!(r.histogram.values().sum::<u64>(), 64);

    let mut params = SearchParams::new(5, 2, SearchMode::Random, 3);
    params.samples = 10_000;
    let r = search_pairs(&params).unwrap();
    assert!(r.witness.is_none());
    assert_eq!(r.max_length, 2);
    assert_eq!(r.evidence, "sampled evidence");

    let w = two_gen_pair(3, fp(2)).unwrap();
    let mut params = SearchParams::new(6, 2, SearchMode::Random, 3);
    params.samples = 200;
    params.seeded = vec![(w.a.clone(), w.b.clone())];
    let r = search_pairs(&params).unwrap();
    let found = r.witness.unwrap();
    assert_eq!(found.derived_length, 3);
    assert_eq!(UnipotentMatrix::<PrimeField>::from_json(&found.a, fp(2)).unwrap(), w.a);
}
