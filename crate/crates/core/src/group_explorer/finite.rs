use std::collections::HashSet;

use super::GroupElem;
use crate::error::{Error, Result};

/// Default bound on the number of elements of an explicit subgroup.
pub const DEFAULT_CLOSURE_CAP: usize = 1 << 20;

/// A subgroup of `U_n(F_p)` held as its full element set.
#[derive(Debug, Clone)]
pub struct FiniteSubgroup<E: GroupElem> {
    elements: Vec<E>,
    index: HashSet<E>,
    generators: Vec<E>,
}

impl<E: GroupElem> FiniteSubgroup<E> {
    /// `⟨gens⟩` by breadth-first closure under right multiplication by the
    /// generators. `identity` fixes the group when `gens` is empty.
    pub fn closure(identity: &E, gens: &[E], cap: usize) -> Result<Self> {
        let (n, p) = (identity.n(), identity.p());
        if gens.iter().any(|g| g.n() != n || g.p() != p) {
            return Err(Error::Mismatch("generators from different groups".into()));
        }
        let id = identity.identity_like();
        let mut elements = vec![id.clone()];
        let mut index = HashSet::from([id]);
        let mut next = 0;
        while next < elements.len() {
            let x = elements[next].clone();
            next += 1;
            for g in gens {
                let y = x.mul(g);
                if !index.contains(&y) {
                    if elements.len() >= cap {
                        return Err(Error::CapExceeded { what: "subgroup elements".into(), size: cap + 1, cap });
                    }
                    index.insert(y.clone());
                    elements.push(y);
                }
            }
        }
        Ok(FiniteSubgroup { elements, index, generators: gens.to_vec() })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[E] {
        &self.elements
    }

    pub fn generators(&self) -> &[E] {
        &self.generators
    }

    pub fn contains(&self, x: &E) -> bool {
        self.index.contains(x)
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    fn identity(&self) -> &E {
        &self.elements[0]
    }

    /// Smallest subgroup containing `seeds` and normalized by `self`.
    pub fn normal_closure(&self, seeds: &[E], cap: usize) -> Result<Self> {
        let mut gens: Vec<E> = Vec::new();
        let mut sub = Self::closure(self.identity(), &gens, cap)?;
        let mut queue: Vec<E> = seeds.to_vec();
        while let Some(x) = queue.pop() {
            if sub.contains(&x) {
                continue;
            }
            gens.push(x.clone());
            sub = Self::closure(self.identity(), &gens, cap)?;
            for g in &self.generators {
                queue.push(g.inv().mul(&x).mul(g));
            }
        }
        // conjugates of every generator of `sub` by generators of `self`
        // now lie in `sub`, so it is normal
        Ok(sub)
    }

    /// `[G, G]`, the normal closure of the commutators of generators.
    pub fn derived_subgroup(&self, cap: usize) -> Result<Self> {
        let g = &self.generators;
        let seeds: Vec<E> =
            (0..g.len()).flat_map(|i| (i + 1..g.len()).map(move |j| (i, j))).map(|(i, j)| g[i].comm(&g[j])).collect();
        self.normal_closure(&seeds, cap)
    }

    /// `G = G^(0) ⊇ G^(1) ⊇ …` down to the trivial group.
    pub fn derived_series(&self, cap: usize) -> Result<Vec<Self>> {
        let mut series = vec![self.clone()];
        while !series.last().unwrap().is_trivial() {
            let next = series.last().unwrap().derived_subgroup(cap)?;
            if next.order() == series.last().unwrap().order() {
                return Err(Error::ConstructionBug("perfect subgroup inside a p-group".into()));
            }
            series.push(next);
        }
        Ok(series)
    }

    pub fn derived_length(&self, cap: usize) -> Result<usize> {
        Ok(self.derived_series(cap)?.len() - 1)
    }

    /// `[G, G]` from all element pairs, for cross-checking on small groups.
    pub fn derived_subgroup_by_pairs(&self, cap: usize) -> Result<Self> {
        let mut comms: Vec<E> = Vec::new();
        let mut seen = HashSet::new();
        for x in &self.elements {
            for y in &self.elements {
                let c = x.comm(y);
                if seen.insert(c.clone()) {
                    comms.push(c);
                }
            }
        }
        Self::closure(self.identity(), &comms, cap)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_explorer::{F2Matrix, FpMatrix};
    use crate::scalar_rings::PrimeField;
    use crate::unitriangular::UnipotentMatrix;

    fn fp(p: u32, n: usize, i: usize, j: usize) -> FpMatrix {
        FpMatrix::new(UnipotentMatrix::transvection(PrimeField::new(p).unwrap(), n, i, j).unwrap())
    }

    #[test]
    fn trivial_and_full_u3() {
        let id = F2Matrix::identity(3);
        let g = FiniteSubgroup::closure(&id, &[id], DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.derived_length(DEFAULT_CLOSURE_CAP).unwrap(), 0);
        let x12 = F2Matrix::from_bits(3, 0b001);
        let x23 = F2Matrix::from_bits(3, 0b100);
        let u3 = FiniteSubgroup::closure(&id, &[x12, x23], DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(u3.order(), 8);
        assert_eq!(u3.derived_length(DEFAULT_CLOSURE_CAP).unwrap(), 2);
    }

    #[test]
    fn cyclic_and_cap() {
        let x = fp(7, 4, 1, 2);
        assert_eq!(FiniteSubgroup::closure(&x, std::slice::from_ref(&x), 100).unwrap().order(), 7);
        let gens = [fp(3, 4, 1, 2), fp(3, 4, 2, 3), fp(3, 4, 3, 4)];
        assert!(matches!(FiniteSubgroup::closure(&gens[0], &gens, 100), Err(Error::CapExceeded { .. })));
        let u4 = FiniteSubgroup::closure(&gens[0], &gens, 1000).unwrap();
        assert_eq!(u4.order(), 729);
        let by_gens = u4.derived_subgroup(1000).unwrap();
        let by_pairs = u4.derived_subgroup_by_pairs(1000).unwrap();
        assert_eq!(by_gens.order(), by_pairs.order());
        assert!(by_pairs.elements().iter().all(|x| by_gens.contains(x)));
    }
}
