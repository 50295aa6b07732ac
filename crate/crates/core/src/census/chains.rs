//! k-chains of a family and their type-I / type-II classification.

use num::BigUint;
use serde::Serialize;

use crate::constructions::factorial_big;
use crate::error::{invalid, Result};
use crate::family::{Family, SubsetMask};

/// Shape of a k-chain `F1 ⊊ .. ⊊ Fk` by its consecutive gaps.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ChainKind {
    /// Every gap `F_{i+1} ∖ F_i` is a single element.
    TypeI,
    /// The first gap with two or more elements is `F_{ℓ+1} ∖ F_ℓ`.
    TypeII(usize),
}

/// A strictly nested sequence of members over `[n]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KChain {
    n: usize,
    sets: Vec<SubsetMask>,
    kind: ChainKind,
}

impl KChain {
    pub fn new(n: usize, sets: Vec<SubsetMask>) -> Result<Self> {
        if sets.is_empty() {
            return invalid("a k-chain needs at least one set");
        }
        if sets.iter().any(|s| s.bits() >> n != 0) {
            return invalid(format!("chain set outside [{n}]"));
        }
        if !sets.windows(2).all(|w| w[0].is_proper_subset_of(w[1])) {
            return invalid("chain sets are not strictly nested");
        }
        let kind = sets
            .windows(2)
            .position(|w| w[1].difference(w[0]).len() >= 2)
            .map_or(ChainKind::TypeI, |i| ChainKind::TypeII(i + 1));
        Ok(KChain { n, sets, kind })
    }

    pub fn from_elements(n: usize, sets: &[&[usize]]) -> Result<Self> {
        Self::new(
            n,
            sets.iter()
                .map(|s| SubsetMask::from_elements(s.iter().copied()))
                .collect(),
        )
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.sets.len()
    }

    #[inline]
    pub fn kind(&self) -> ChainKind {
        self.kind
    }

    #[inline]
    pub fn sets(&self) -> &[SubsetMask] {
        &self.sets
    }

    /// `F_i`, 1-based.
    #[inline]
    pub fn set(&self, i: usize) -> SubsetMask {
        self.sets[i - 1]
    }

    #[inline]
    pub fn first(&self) -> SubsetMask {
        self.sets[0]
    }

    #[inline]
    pub fn last(&self) -> SubsetMask {
        self.sets[self.sets.len() - 1]
    }

    /// Gap sizes `|F_i| - |F_{i-1}|` for `i = 1..=k`, with `|F_0| = 0`.
    pub fn gaps(&self) -> Vec<usize> {
        let mut prev = 0;
        self.sets
            .iter()
            .map(|s| {
                let g = s.len() - prev;
                prev = s.len();
                g
            })
            .collect()
    }

    /// `(n - |F_k|)! ∏ (|F_i| - |F_{i-1}|)!`: the number of maximal chains
    /// through all of `F1, .., Fk`.
    pub fn weight(&self) -> BigUint {
        self.gaps()
            .into_iter()
            .fold(factorial_big(self.n - self.last().len()), |acc, g| {
                acc * factorial_big(g)
            })
    }
}

/// Every k-chain in `fam`, in lexicographic order of storage indices.
pub fn enumerate_k_chains(fam: &Family, k: usize) -> Vec<KChain> {
    let members = fam.members();
    let mut out = Vec::new();
    if k == 0 {
        return out;
    }
    let mut stack: Vec<usize> = Vec::with_capacity(k);
    fn rec(
        members: &[SubsetMask],
        k: usize,
        n: usize,
        start: usize,
        stack: &mut Vec<usize>,
        out: &mut Vec<KChain>,
    ) {
        if stack.len() == k {
            let sets = stack.iter().map(|&i| members[i]).collect();
            out.push(KChain::new(n, sets).expect("nested by construction"));
            return;
        }
        for j in start..members.len() {
            if let Some(&top) = stack.last() {
                if !members[top].is_proper_subset_of(members[j]) {
                    continue;
                }
            }
            stack.push(j);
            rec(members, k, n, j + 1, stack, out);
            stack.pop();
        }
    }
    rec(members, k, fam.n(), 0, &mut stack, &mut out);
    out
}

/// `Σ_{(F1..Fk) ∈ 𝓕^k} (n - |F_k|)! ∏ (|F_i| - |F_{i-1}|)!`.
///
/// Counts (k-chain, maximal chain) incidences; equals the number of maximal
/// chains meeting `fam` in exactly `k` sets whenever no maximal chain meets
/// it in more.
pub fn c_plus_formula(fam: &Family, k: usize) -> BigUint {
    enumerate_k_chains(fam, k).iter().map(KChain::weight).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::Zero;

    #[test]
    fn classification_examples() {
        let fam = Family::from_sets(3, &[&[1], &[1, 2]]).unwrap();
        let chains = enumerate_k_chains(&fam, 2);
        assert_eq!(chains.len(), 1);
        assert_eq!(chains[0].kind(), ChainKind::TypeI);

        let fam = Family::from_sets(3, &[&[1], &[1, 2, 3]]).unwrap();
        let chains = enumerate_k_chains(&fam, 2);
        assert_eq!(chains.len(), 1);
        assert_eq!(chains[0].kind(), ChainKind::TypeII(1));

        let fam = Family::from_sets(5, &[&[1], &[1, 2], &[1, 2, 3, 4]]).unwrap();
        let chains = enumerate_k_chains(&fam, 3);
        assert_eq!(chains.len(), 1);
        assert_eq!(chains[0].kind(), ChainKind::TypeII(2));
    }

    #[test]
    fn enumeration_order_and_count() {
        let cube = Family::power_set(crate::family::GroundSet::new(3).unwrap());
        // 2-chains in 2^[3]: pairs A ⊊ B, i.e. 3^3 - 2^3 = 19.
        let chains = enumerate_k_chains(&cube, 2);
        assert_eq!(chains.len(), 19);
        let idx: Vec<(usize, usize)> = chains
            .iter()
            .map(|c| (cube.index_of(c.set(1)).unwrap(), cube.index_of(c.set(2)).unwrap()))
            .collect();
        let mut sorted = idx.clone();
        sorted.sort();
        assert_eq!(idx, sorted);
        assert_eq!(enumerate_k_chains(&cube, 4).len(), 6);
        assert!(enumerate_k_chains(&cube, 5).is_empty());
    }

    #[test]
    fn c_plus_examples() {
        let fam = Family::from_sets(4, &[&[1], &[1, 2]]).unwrap();
        assert_eq!(c_plus_formula(&fam, 2), BigUint::from(2u32));

        let fam = Family::from_sets(4, &[&[1], &[2]]).unwrap();
        assert!(c_plus_formula(&fam, 2).is_zero());

        let fam = Family::from_sets(4, &[&[1], &[1, 2, 3]]).unwrap();
        assert_eq!(c_plus_formula(&fam, 2), BigUint::from(2u32));
    }

    #[test]
    fn rejects_non_chains() {
        assert!(KChain::from_elements(3, &[&[1], &[2]]).is_err());
        assert!(KChain::from_elements(3, &[&[1], &[1]]).is_err());
        assert!(KChain::from_elements(3, &[]).is_err());
        assert!(KChain::from_elements(2, &[&[3]]).is_err());
    }
}
