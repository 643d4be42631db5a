use num_bigint::BigUint;

use super::{position_count, GroupElem};
use crate::error::{Error, Result};

fn inv_mod(c: u32, p: u32) -> u32 {
    // p is prime, so c^(p-2) is the inverse
    let (mut acc, mut base, mut e) = (1u64, c as u64 % p as u64, p as u64 - 2);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

/// A subgroup of `U_n(F_p)` held as a sifting base: at most one element per
/// matrix position, each with leading entry 1 at that position.
///
/// Every element has a unique normal form `b_1^{e_1} ⋯ b_k^{e_k}` with
/// `0 ≤ e_i < p`, so the order is `p^k`. This handles subgroups far beyond
/// the reach of explicit element sets.
#[derive(Debug, Clone)]
pub struct PcSubgroup<E: GroupElem> {
    identity: E,
    base: Vec<Option<E>>,
    generators: Vec<E>,
}

impl<E: GroupElem> PcSubgroup<E> {
    fn empty(identity: &E) -> Self {
        PcSubgroup {
            identity: identity.identity_like(),
            base: vec![None; position_count(identity.n())],
            generators: Vec::new(),
        }
    }

    /// `⟨gens⟩`; `identity` fixes the group when `gens` is empty.
    pub fn closure(identity: &E, gens: &[E]) -> Result<Self> {
        Self::check_same_group(identity, gens)?;
        let mut h = Self::empty(identity);
        h.generators = gens.to_vec();
        h.absorb(gens.to_vec(), &[]);
        Ok(h)
    }

    fn check_same_group(identity: &E, gens: &[E]) -> Result<()> {
        if gens.iter().any(|g| g.n() != identity.n() || g.p() != identity.p()) {
            return Err(Error::Mismatch("generators from different groups".into()));
        }
        Ok(())
    }

    /// Adds `queue` and everything it forces, also closing under
    /// conjugation by `normalizers`.
    fn absorb(&mut self, mut queue: Vec<E>, normalizers: &[E]) {
        let p = self.identity.p();
        while let Some(x) = queue.pop() {
            let r = self.sift(x);
            let Some((pos, c)) = r.leading() else { continue };
            let r = if c == 1 { r } else { r.pow(inv_mod(c, p) as u64) };
            queue.push(r.pow(p as u64));
            for b in self.base.iter().flatten() {
                queue.push(r.comm(b));
            }
            for h in normalizers {
                queue.push(r.comm(h));
            }
            self.base[pos] = Some(r);
        }
    }

    /// Reduces `x` by the base until its leading position has no base
    /// element; returns the identity iff `x` lies in the subgroup.
    pub fn sift(&self, mut x: E) -> E {
        while let Some((pos, c)) = x.leading() {
            match &self.base[pos] {
                Some(b) => x = b.inv().pow(c as u64).mul(&x),
                None => break,
            }
        }
        x
    }

    pub fn contains(&self, x: &E) -> bool {
        self.sift(x.clone()).is_identity()
    }

    /// The base elements in position order.
    pub fn base(&self) -> Vec<E> {
        self.base.iter().flatten().cloned().collect()
    }

    pub fn generators(&self) -> &[E] {
        &self.generators
    }

    /// `log_p |H|`.
    pub fn order_exponent(&self) -> usize {
        self.base.iter().flatten().count()
    }

    pub fn order(&self) -> BigUint {
        BigUint::from(self.identity.p()).pow(self.order_exponent() as u32)
    }

    pub fn is_trivial(&self) -> bool {
        self.order_exponent() == 0
    }

    /// Normal closure of `seeds` in `self`.
    pub fn normal_closure(&self, seeds: &[E]) -> Result<Self> {
        Self::check_same_group(&self.identity, seeds)?;
        let mut n = Self::empty(&self.identity);
        let normalizers = self.base();
        n.absorb(seeds.to_vec(), &normalizers);
        n.generators = n.base();
        Ok(n)
    }

    /// `[H, H]`.
    pub fn derived_subgroup(&self) -> Self {
        let g = self.base();
        let seeds: Vec<E> =
            (0..g.len()).flat_map(|i| (i + 1..g.len()).map(move |j| (i, j))).map(|(i, j)| g[i].comm(&g[j])).collect();
        self.normal_closure(&seeds).expect("same group")
    }

    /// `H = H^(0) ⊋ H^(1) ⊋ …` down to the trivial group.
    pub fn derived_series(&self) -> Vec<Self> {
        let mut series = vec![self.clone()];
        while !series.last().unwrap().is_trivial() {
            let next = series.last().unwrap().derived_subgroup();
            series.push(next);
        }
        series
    }

    pub fn derived_length(&self) -> usize {
        self.derived_series().len() - 1
    }

    /// `H = γ_1 ⊋ γ_2 ⊋ …` down to the trivial group.
    pub fn lower_central_series(&self) -> Vec<Self> {
        let top = self.base();
        let mut series = vec![self.clone()];
        while !series.last().unwrap().is_trivial() {
            let cur = series.last().unwrap().base();
            let seeds: Vec<E> = cur.iter().flat_map(|x| top.iter().map(move |g| x.comm(g))).collect();
            let next = self.normal_closure(&seeds).expect("same group");
            series.push(next);
        }
        series
    }

    /// Nilpotency class.
    pub fn nilpotency_class(&self) -> usize {
        self.lower_central_series().len() - 1
    }
}
