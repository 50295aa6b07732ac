//! The sets of maximal chains attached to each k-chain, built as membership
//! predicates on permutations.
//!
//! For a type-I k-chain and `x ∈ F1`, `z ∉ Fk` the part `(x, z)` collects the
//! maximal chains through every `(F_i - x) + z` and through `F_k + z`. For a
//! type-II-ℓ chain the part `(x, z, σ)` uses the sets
//!
//! ```text
//! A1 = { F_i - x : 1 <= i <= ℓ }
//! A2 = { (F_ℓ - x) + σ1, F_ℓ + σ1, F_ℓ + σ1 + σ2, .., F_{ℓ+1} - σm, (F_{ℓ+1} - σm) + z }
//! A3 = { F_j + z : ℓ + 1 <= j <= k }
//! ```
//!
//! where `σ` orders the gap `F_{ℓ+1} ∖ F_ℓ` of size `m >= 2`. Parts of one
//! k-chain are pairwise disjoint.

use std::collections::HashMap;

use itertools::Itertools;
use num::{BigUint, Zero};

use super::chains::{ChainKind, KChain};
use crate::constructions::factorial_big;
use crate::error::{invalid, Error, Result};
use crate::family::{Permutation, SubsetMask};

/// Largest `n` for which chain sets are materialized by filtering `S_n`.
pub const CHAIN_SET_MAX_N: usize = 8;

/// One `(x, z[, σ])` part of a k-chain's chain set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainSetPart {
    pub x: usize,
    pub z: usize,
    /// Ordering of the first wide gap; `None` for type-I chains.
    pub sigma: Option<Vec<usize>>,
    /// Sets every maximal chain of this part passes through, ascending.
    pub required: Vec<SubsetMask>,
    /// For type-I parts, the starred restriction keeps only chains where `z`
    /// sits at position `<= |F1| - 2`; `None` means no restriction.
    pub star_limit: Option<usize>,
}

impl ChainSetPart {
    /// Membership of the maximal chain whose prefix sets are `prefix`
    /// (`prefix[s]` is the size-`s` set of the chain).
    #[inline]
    pub fn contains(&self, prefix: &[SubsetMask]) -> bool {
        self.required.iter().all(|r| prefix[r.len()] == *r)
    }

    /// Membership in the starred restriction of this part.
    #[inline]
    pub fn contains_starred(&self, prefix: &[SubsetMask]) -> bool {
        if !self.contains(prefix) {
            return false;
        }
        match self.star_limit {
            None => true,
            // ind(z) <= limit  <=>  z already present in the prefix of size limit.
            Some(limit) => prefix[limit].contains(self.z),
        }
    }
}

fn type1_required(ch: &KChain, x: usize, z: usize) -> Vec<SubsetMask> {
    let mut req: Vec<SubsetMask> = ch.sets().iter().map(|f| f.without(x).with(z)).collect();
    req.push(ch.last().with(z));
    req
}

fn type2_required(ch: &KChain, ell: usize, x: usize, z: usize, sigma: &[usize]) -> Vec<SubsetMask> {
    let m = sigma.len();
    let f_ell = ch.set(ell);
    let f_next = ch.set(ell + 1);
    let mut req: Vec<SubsetMask> = (1..=ell).map(|i| ch.set(i).without(x)).collect();
    req.push(f_ell.without(x).with(sigma[0]));
    let mut acc = f_ell;
    for &s in &sigma[..m - 1] {
        acc = acc.with(s);
        req.push(acc);
    }
    debug_assert_eq!(acc, f_next.without(sigma[m - 1]));
    req.push(acc.with(z));
    req.extend((ell + 1..=ch.k()).map(|j| ch.set(j).with(z)));
    req
}

fn star_limit(ch: &KChain) -> Option<usize> {
    match ch.kind() {
        // y1 sits at position |F1| + 1; z must come at least three slots earlier.
        ChainKind::TypeI => Some(ch.first().len().saturating_sub(2)),
        ChainKind::TypeII(_) => None,
    }
}

fn outside(ch: &KChain) -> impl Iterator<Item = usize> + '_ {
    (1..=ch.n()).filter(move |&z| !ch.last().contains(z))
}

/// Every `(x, z[, σ])` part of the chain set of `ch`, ordered by `x`, then
/// `z`, then `σ` lexicographically.
pub fn chain_set_parts(ch: &KChain) -> Vec<ChainSetPart> {
    let limit = star_limit(ch);
    let mut parts = Vec::new();
    for x in ch.first().iter() {
        for z in outside(ch) {
            match ch.kind() {
                ChainKind::TypeI => parts.push(ChainSetPart {
                    x,
                    z,
                    sigma: None,
                    required: type1_required(ch, x, z),
                    star_limit: limit,
                }),
                ChainKind::TypeII(ell) => {
                    let gap = ch.set(ell + 1).difference(ch.set(ell));
                    for sigma in gap.iter().permutations(gap.len()) {
                        parts.push(ChainSetPart {
                            x,
                            z,
                            required: type2_required(ch, ell, x, z, &sigma),
                            sigma: Some(sigma),
                            star_limit: None,
                        });
                    }
                }
            }
        }
    }
    parts
}

fn check_filter_size(ch: &KChain) -> Result<()> {
    if ch.n() > CHAIN_SET_MAX_N {
        return Err(Error::Capacity(format!(
            "chain sets are filtered over S_n and capped at n <= {CHAIN_SET_MAX_N}, got {}",
            ch.n()
        )));
    }
    Ok(())
}

fn check_xz(ch: &KChain, x: usize, z: usize) -> Result<()> {
    if !ch.first().contains(x) {
        return invalid(format!("x = {x} is not in F1 = {}", ch.first()));
    }
    if z == 0 || z > ch.n() || ch.last().contains(z) {
        return invalid(format!("z = {z} must lie in [{}] outside Fk = {}", ch.n(), ch.last()));
    }
    Ok(())
}

fn filter_perms(n: usize, keep: impl Fn(&[SubsetMask]) -> bool) -> Vec<Permutation> {
    Permutation::all(n)
        .filter(|p| keep(&p.prefix_sets()))
        .collect()
}

/// `𝓒(x, z, F1, .., Fk)` for a type-I chain, as permutations.
pub fn chain_set_type1(x: usize, z: usize, ch: &KChain) -> Result<Vec<Permutation>> {
    if ch.kind() != ChainKind::TypeI {
        return invalid(format!("chain is {:?}, not type I", ch.kind()));
    }
    check_xz(ch, x, z)?;
    check_filter_size(ch)?;
    let part = ChainSetPart {
        x,
        z,
        sigma: None,
        required: type1_required(ch, x, z),
        star_limit: star_limit(ch),
    };
    Ok(filter_perms(ch.n(), |pre| part.contains(pre)))
}

/// `𝓒(x, z, σ, F1, .., Fk)` for a type-II-ℓ chain, as permutations.
pub fn chain_set_type2(x: usize, z: usize, sigma: &[usize], ch: &KChain) -> Result<Vec<Permutation>> {
    let ChainKind::TypeII(ell) = ch.kind() else {
        return invalid("chain has no gap of size >= 2 (type I); type-II chain sets need m >= 2");
    };
    check_xz(ch, x, z)?;
    let gap = ch.set(ell + 1).difference(ch.set(ell));
    let sorted: Vec<usize> = sigma.iter().copied().sorted().collect();
    if sorted != gap.elements() {
        return invalid(format!("sigma {sigma:?} is not an ordering of the gap {gap}"));
    }
    check_filter_size(ch)?;
    let required = type2_required(ch, ell, x, z, sigma);
    Ok(filter_perms(ch.n(), |pre| required.iter().all(|r| pre[r.len()] == *r)))
}

/// `𝓒(F1, .., Fk)`: the union of all parts.
pub fn chain_set(ch: &KChain) -> Result<Vec<Permutation>> {
    check_filter_size(ch)?;
    let parts = chain_set_parts(ch);
    Ok(filter_perms(ch.n(), |pre| parts.iter().any(|p| p.contains(pre))))
}

/// `𝓒*(F1, .., Fk)`: for type-I chains only the chains with `z` at position
/// at most `|F1| - 2`; for type-II chains the full chain set.
pub fn starred_chain_set(ch: &KChain) -> Result<Vec<Permutation>> {
    check_filter_size(ch)?;
    let parts = chain_set_parts(ch);
    Ok(filter_perms(ch.n(), |pre| {
        parts.iter().any(|p| p.contains_starred(pre))
    }))
}

fn has_parts(ch: &KChain) -> bool {
    !ch.first().is_empty() && ch.last().len() < ch.n()
}

/// Size of a single part: `|F1|! (n - |Fk| - 1)!` for type I, and
/// `(|F1| - 1)! ∏_{i >= ℓ+2} (|F_i| - |F_{i-1}|)! (n - |Fk| - 1)!` for type II.
pub fn part_size(ch: &KChain) -> BigUint {
    if !has_parts(ch) {
        return BigUint::zero();
    }
    let tail = factorial_big(ch.n() - ch.last().len() - 1);
    match ch.kind() {
        ChainKind::TypeI => factorial_big(ch.first().len()) * tail,
        ChainKind::TypeII(ell) => {
            let gaps = ch.gaps();
            gaps[ell + 1..]
                .iter()
                .fold(factorial_big(ch.first().len() - 1) * tail, |acc, &g| {
                    acc * factorial_big(g)
                })
        }
    }
}

/// `|𝓒(F1, .., Fk)|`: `|F1| (n - |Fk|)! ∏ gap!` for type I and
/// `(n - |Fk|)! ∏ gap!` for type II. Zero when `F1 = ∅` or `Fk = [n]`.
pub fn aggregate_chain_set_size(ch: &KChain) -> BigUint {
    if !has_parts(ch) {
        return BigUint::zero();
    }
    match ch.kind() {
        ChainKind::TypeI => BigUint::from(ch.first().len()) * ch.weight(),
        ChainKind::TypeII(_) => ch.weight(),
    }
}

/// `|𝓒*(F1, .., Fk)|`: `(|F1| - 2) (n - |Fk|)! ∏ gap!` for type I (zero when
/// `|F1| <= 2`), the aggregate size for type II.
pub fn starred_chain_set_size(ch: &KChain) -> BigUint {
    if !has_parts(ch) {
        return BigUint::zero();
    }
    match ch.kind() {
        ChainKind::TypeI => BigUint::from(ch.first().len().saturating_sub(2)) * ch.weight(),
        ChainKind::TypeII(_) => ch.weight(),
    }
}

/// Parts of many k-chains, indexed by their largest required set `F_k + z`
/// so a maximal chain only has to be tested against parts it can belong to.
pub(crate) struct PartIndex {
    parts: Vec<(usize, ChainSetPart)>,
    by_top: HashMap<u32, Vec<usize>>,
}

impl PartIndex {
    pub(crate) fn new(chains: &[KChain]) -> Self {
        let mut parts = Vec::new();
        let mut by_top: HashMap<u32, Vec<usize>> = HashMap::new();
        for (id, ch) in chains.iter().enumerate() {
            for part in chain_set_parts(ch) {
                let top = *part.required.last().expect("parts are nonempty");
                by_top.entry(top.bits()).or_default().push(parts.len());
                parts.push((id, part));
            }
        }
        PartIndex { parts, by_top }
    }

    /// `(chain id, part)` for every part containing the maximal chain.
    pub(crate) fn matches<'a>(
        &'a self,
        prefix: &'a [SubsetMask],
    ) -> impl Iterator<Item = (usize, &'a ChainSetPart)> + 'a {
        prefix
            .iter()
            .filter_map(move |s| self.by_top.get(&s.bits()))
            .flatten()
            .map(move |&i| (&self.parts[i].0, &self.parts[i].1))
            .filter(move |(_, p)| p.contains(prefix))
            .map(|(&id, p)| (id, p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn kc(n: usize, sets: &[&[usize]]) -> KChain {
        KChain::from_elements(n, sets).unwrap()
    }

    #[test]
    fn type1_part_and_aggregate() {
        let ch = kc(5, &[&[1, 2], &[1, 2, 3]]);
        let part = chain_set_type1(1, 4, &ch).unwrap();
        assert_eq!(part.len(), 2);
        assert_eq!(BigUint::from(part.len()), part_size(&ch));
        let all = chain_set(&ch).unwrap();
        assert_eq!(all.len(), 8);
        assert_eq!(aggregate_chain_set_size(&ch), BigUint::from(8u32));
    }

    #[test]
    fn type1_parts_are_disjoint() {
        let ch = kc(5, &[&[1, 2], &[1, 2, 3]]);
        let a: HashSet<_> = chain_set_type1(1, 4, &ch).unwrap().into_iter().collect();
        let b: HashSet<_> = chain_set_type1(2, 4, &ch).unwrap().into_iter().collect();
        assert!(a.is_disjoint(&b));
    }

    #[test]
    fn type1_aggregate_n6() {
        // 3 · 2! · (3! · 1!) = 36
        let ch = kc(6, &[&[1, 2, 3], &[1, 2, 3, 4]]);
        assert_eq!(chain_set(&ch).unwrap().len(), 36);
        assert_eq!(aggregate_chain_set_size(&ch), BigUint::from(36u32));
    }

    #[test]
    fn type2_example() {
        let ch = kc(5, &[&[1, 2], &[1, 2, 3, 4]]);
        assert_eq!(ch.kind(), ChainKind::TypeII(1));
        let part = chain_set_type2(1, 5, &[3, 4], &ch).unwrap();
        let expect: Vec<SubsetMask> = [&[2][..], &[2, 3], &[1, 2, 3], &[1, 2, 3, 5], &[1, 2, 3, 4, 5]]
            .iter()
            .map(|s| SubsetMask::from_elements(s.iter().copied()))
            .collect();
        for p in &part {
            for s in &expect {
                assert!(p.chain_contains(*s));
            }
        }
        assert_eq!(part.len(), 1);
        assert_eq!(chain_set(&ch).unwrap().len(), 4);
        assert_eq!(aggregate_chain_set_size(&ch), BigUint::from(4u32));
    }

    #[test]
    fn type2_rejects_narrow_gap_and_bad_sigma() {
        let narrow = kc(5, &[&[1, 2], &[1, 2, 3]]);
        assert!(chain_set_type2(1, 4, &[3], &narrow).is_err());
        let wide = kc(5, &[&[1, 2], &[1, 2, 3, 4]]);
        assert!(chain_set_type2(1, 5, &[3, 5], &wide).is_err());
        assert!(chain_set_type2(3, 5, &[3, 4], &wide).is_err());
        assert!(chain_set_type2(1, 4, &[3, 4], &wide).is_err());
    }

    #[test]
    fn starred_examples() {
        let ch = kc(6, &[&[1, 2, 3], &[1, 2, 3, 4]]);
        // (3 - 2) * 2! * (3! * 1!) = 12
        assert_eq!(starred_chain_set(&ch).unwrap().len(), 12);
        assert_eq!(starred_chain_set_size(&ch), BigUint::from(12u32));

        let ch = kc(5, &[&[1, 2], &[1, 2, 3]]);
        assert!(starred_chain_set(&ch).unwrap().is_empty());

        let ch = kc(5, &[&[1, 2], &[1, 2, 3, 4]]);
        assert_eq!(starred_chain_set(&ch).unwrap().len(), 4);
    }

    #[test]
    fn degenerate_chains_have_empty_chain_sets() {
        let top = kc(3, &[&[1], &[1, 2, 3]]);
        assert!(chain_set(&top).unwrap().is_empty());
        assert!(aggregate_chain_set_size(&top).is_zero());
        let bottom = kc(3, &[&[], &[1]]);
        assert!(chain_set(&bottom).unwrap().is_empty());
    }

    #[test]
    fn index_matches_filter() {
        let chains = vec![
            kc(5, &[&[1, 2], &[1, 2, 3]]),
            kc(5, &[&[1, 2], &[1, 2, 3, 4]]),
            kc(5, &[&[2, 3], &[1, 2, 3]]),
        ];
        let index = PartIndex::new(&chains);
        for p in Permutation::all(5) {
            let pre = p.prefix_sets();
            let got: Vec<usize> = index.matches(&pre).map(|(id, _)| id).sorted().collect();
            let want: Vec<usize> = chains
                .iter()
                .enumerate()
                .filter(|(_, c)| chain_set_parts(c).iter().any(|part| part.contains(&pre)))
                .map(|(i, _)| i)
                .collect();
            assert_eq!(got, want);
        }
    }
}
