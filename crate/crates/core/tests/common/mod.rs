#![allow(dead_code)]

use proptest::prelude::*;
use unitri::{Integer, Integers, PrimeField, UnipotentMatrix};

pub fn fp(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}

/// Random element of `U_n(F_p)`.
pub fn fp_matrix(n: usize, p: u32) -> impl Strategy<Value = UnipotentMatrix<PrimeField>> {
    prop::collection::vec(0..p, n * (n - 1) / 2).prop_map(move |v| dense(fp(p), n, v))
}

/// Random element of `U_n(Z)` with small entries.
pub fn int_matrix(n: usize) -> impl Strategy<Value = UnipotentMatrix<Integers>> {
    prop::collection::vec(-9i64..=9, n * (n - 1) / 2)
        .prop_map(move |v| dense(Integers, n, v.into_iter().map(Integer::from).collect()))
}

/// Fills the strict upper triangle row by row.
pub fn dense<R: unitri::Ring>(ring: R, n: usize, values: Vec<R::Elem>) -> UnipotentMatrix<R> {
    let mut it = values.into_iter();
    let mut entries = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            entries.push((i, j, it.next().unwrap()));
        }
    }
    UnipotentMatrix::from_entries(ring, n, entries).unwrap()
}

/// `x⁻¹y⁻¹xy` straight from products and inverses.
pub fn naive_comm<R: unitri::Ring>(x: &UnipotentMatrix<R>, y: &UnipotentMatrix<R>) -> UnipotentMatrix<R> {
    x.inverse().mul(&y.inverse()).unwrap().mul(&x.mul(y).unwrap()).unwrap()
}
