mod common;

use common::*;
use proptest::prelude::*;
use unitri::free_words::families::{build_w, c10, c5, c5_partner, c21_triple, left_normed};
use unitri::free_words::{evaluate, Assignment};
use unitri::symbolic_oracle::{entry_poly, SymbolicPair};
use unitri::{Flag, Integer, Integers, UnipotentMatrix, Word};

fn sample_words() -> Vec<Word> {
    [
        "(comm a b)",
        "(prod a (inv b))",
        "(comm (comm b a a) (comm b a))",
        "(prod (pow a 3) (comm b (inv a)))",
        "(comm (prod a b) (inv (comm a b b)))",
    ]
    .iter()
    .map(|s| Word::parse(s).unwrap())
    .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn evaluation_is_a_homomorphism((x, y) in (2usize..=6).prop_flat_map(|n| (int_matrix(n), int_matrix(n)))) {
        let asg = Assignment::from_pairs([("a", x), ("b", y)]).unwrap();
        for u in sample_words() {
            for v in sample_words() {
                let (eu, ev) = (evaluate(&u, &asg).unwrap(), evaluate(&v, &asg).unwrap());
                prop_assert_eq!(evaluate(&u.prod(&v), &asg).unwrap(), eu.mul(&ev).unwrap());
                prop_assert_eq!(evaluate(&u.comm(&v), &asg).unwrap(), naive_comm(&eu, &ev));
            }
            prop_assert_eq!(evaluate(&u.inv(), &asg).unwrap(), evaluate(&u, &asg).unwrap().inverse());
        }
    }

    #[test]
    fn weights_bound_gamma_index(
        (x, y, z) in (2usize..=11).prop_flat_map(|n| (fp_matrix(n, 3), fp_matrix(n, 3), fp_matrix(n, 3)))
    ) {
        let n = x.n();
        let asg = Assignment::from_pairs([("a", x.clone()), ("b", y.clone())]).unwrap();
        for w in [c5(), c5_partner(), c10()].into_iter().chain(sample_words()) {
            let v = evaluate(&w, &asg).unwrap();
            prop_assert!(v.gamma_index() >= n.min(w.weight() as usize));
        }
        let asg = Assignment::from_pairs([("x1", x), ("x2", y), ("x3", z)]).unwrap();
        for d in 1..=4 {
            let w = build_w(d, (1, 0, 0)).unwrap();
            let v = evaluate(&w, &asg).unwrap();
            prop_assert!(v.gamma_index() >= n.min(w.weight() as usize));
        }
    }

    #[test]
    fn zero_one_points_match_numeric_values(bits in prop::collection::vec(any::<bool>(), 10)) {
        for (w, n) in [(c5(), 6usize), (c5_partner(), 6), (c10(), 11)] {
            let flags: Vec<Flag> = bits[..n - 1].iter().map(|&b| if b { Flag::Beta } else { Flag::Alpha }).collect();
            let ones: Vec<(u32, Flag)> = flags.iter().enumerate().map(|(k, &f)| (k as u32 + 1, f)).collect();
            let diag = |want: Flag| flags.iter().map(|&f| Integer::from((f == want) as i64)).collect();
            let a = UnipotentMatrix::from_superdiagonal(Integers, diag(Flag::Alpha));
            let b = UnipotentMatrix::from_superdiagonal(Integers, diag(Flag::Beta));
            let asg = Assignment::from_pairs([("a", a), ("b", b)]).unwrap();
            let numeric = evaluate(&w, &asg).unwrap().get(1, n).clone();
            let symbolic = entry_poly(&w, n, 1, n).unwrap().eval01(&ones).unwrap();
            prop_assert_eq!(numeric, symbolic);
        }
    }
}

#[test]
fn every_entry_has_exact_support() {
    for w in [c5(), c10(), Word::parse("(prod a (comm b a))").unwrap()] {
        for n in [6usize, 8] {
            for i in 1..n {
                for j in i + 1..=n {
                    let p = entry_poly(&w, n, i, j).unwrap();
                    assert_eq!((p.lo() as usize, p.degree() as usize), (i, j - i));
                    assert!(p.terms().all(|(m, c)| m.lo() as usize == i && m.degree() as usize == j - i && !c.is_zero()));
                }
            }
        }
    }
}

#[test]
fn second_derived_words_vanish_below_six() {
    let ba = left_normed(&["b", "a"]).unwrap();
    let bab = left_normed(&["b", "a", "b"]).unwrap();
    let baa = left_normed(&["b", "a", "a"]).unwrap();
    let ab = left_normed(&["a", "b"]).unwrap();
    let second = [
        baa.comm(&ba),
        bab.comm(&ba),
        ba.comm(&ab.prod(&baa)),
        bab.prod(&ba).comm(&baa.inv()),
        Word::parse("(comm (comm (prod a b) (inv a)) (comm b (prod a a)))").unwrap(),
    ];
    let pair = SymbolicPair::new(5).unwrap();
    let asg = pair.assignment();
    for w in &second {
        assert!(w.depth() >= 2);
        assert!(evaluate(w, &asg).unwrap().is_identity(), "{w}");
    }
    for w in [c5(), c5_partner()] {
        assert_eq!(w.weight(), 5);
        assert!(!entry_poly(&w, 6, 1, 6).unwrap().is_zero());
    }
}

#[test]
fn c21_family_is_weight_21() {
    for w in c21_triple() {
        assert_eq!((w.weight(), w.depth()), (21, 4));
    }
}
