//! Maximal-chain census: how many of the `n!` maximal chains of `2^[n]` meet
//! a family in exactly `j` sets, for every `j`.
//!
//! Two independent engines compute the same [`CensusResult`]:
//! [`census_direct`] walks all permutations, [`census_ie`] counts chains
//! through each chain of the family and inverts by inclusion–exclusion.

mod chain_sets;
mod chains;
mod verify;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

pub use chain_sets::{
    aggregate_chain_set_size, chain_set, chain_set_parts, chain_set_type1, chain_set_type2,
    part_size, starred_chain_set, starred_chain_set_size, ChainSetPart, CHAIN_SET_MAX_N,
};
pub use chains::{c_plus_formula, enumerate_k_chains, ChainKind, KChain};
pub use verify::{
    s_star, verify_claims, verify_corollary_26, verify_lemma_21, ClaimCounterexample,
    ClaimsReport, CorollaryReport, LemmaReport, SStarEntry, SStarReport, VERIFY_MAX_N,
};

use crate::constructions::{binomial, factorial};
use crate::error::{Error, Result};
use crate::family::Family;

/// Largest `n` for permutation enumeration.
pub const DIRECT_MAX_N: usize = 10;

/// Largest family accepted by the inclusion–exclusion engine.
pub const IE_MAX_MEMBERS: usize = 20_000;

/// Distribution of `|𝓕 ∩ 𝓒|` over all maximal chains `𝓒`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusResult {
    pub n: usize,
    pub k: usize,
    /// `j -> number of maximal chains meeting the family in j sets`; only
    /// nonzero entries are stored.
    pub counts: BTreeMap<usize, u64>,
    /// Chains meeting fewer than `k - 1` sets.
    pub c_minus: u64,
    /// Chains meeting exactly `k - 1` sets.
    pub c: u64,
    /// Chains meeting exactly `k` sets.
    pub c_plus: u64,
}

impl CensusResult {
    fn from_histogram(n: usize, k: usize, hist: &[u64]) -> Self {
        let counts: BTreeMap<usize, u64> = hist
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(j, &c)| (j, c))
            .collect();
        let mut c_minus = 0;
        let mut c = 0;
        let mut c_plus = 0;
        for (&j, &cnt) in &counts {
            if j + 1 < k {
                c_minus += cnt;
            } else if j + 1 == k {
                c += cnt;
            } else if j == k {
                c_plus += cnt;
            }
        }
        CensusResult {
            n,
            k,
            counts,
            c_minus,
            c,
            c_plus,
        }
    }

    /// `Σ_j counts[j]`.
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Number of chains meeting more than `k` sets.
    pub fn beyond_k(&self) -> u64 {
        self.counts.range(self.k + 1..).map(|(_, &c)| c).sum()
    }
}

fn membership_table(fam: &Family) -> Vec<bool> {
    let mut table = vec![false; fam.ground().power_set_size()];
    for m in fam.iter() {
        table[m.bits() as usize] = true;
    }
    table
}

fn walk(mask: u32, depth: usize, met: usize, n: usize, member: &[bool], hist: &mut [u64]) {
    if depth == n {
        hist[met] += 1;
        return;
    }
    let mut free = !mask & ((1u32 << n) - 1);
    while free != 0 {
        let bit = free & free.wrapping_neg();
        free ^= bit;
        let next = mask | bit;
        walk(next, depth + 1, met + member[next as usize] as usize, n, member, hist);
    }
}

/// Census by enumerating every permutation of `[n]` (`n <= 10`).
///
/// The permutation tree is split by its first two levels across threads; the
/// per-block histograms are summed, so the result is independent of the
/// thread count.
pub fn census_direct(fam: &Family, k: usize) -> Result<CensusResult> {
    let n = fam.n();
    if n > DIRECT_MAX_N {
        return Err(Error::Capacity(format!(
            "direct census enumerates n! permutations and is capped at n <= {DIRECT_MAX_N} \
             (got n = {n}); use the inclusion-exclusion engine"
        )));
    }
    let member = membership_table(fam);
    let start = member[0] as usize;
    let blocks: Vec<(usize, usize)> = if n == 1 {
        vec![(0, usize::MAX)]
    } else {
        (0..n)
            .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
            .collect()
    };
    let total = blocks
        .par_iter()
        .map(|&(a, b)| {
            let mut hist = vec![0u64; n + 2];
            let m1 = 1u32 << a;
            let mut met = start + member[m1 as usize] as usize;
            if b == usize::MAX {
                walk(m1, 1, met, n, &member, &mut hist);
            } else {
                let m2 = m1 | 1 << b;
                met += member[m2 as usize] as usize;
                walk(m2, 2, met, n, &member, &mut hist);
            }
            hist
        })
        .reduce(
            || vec![0u64; n + 2],
            |mut acc, h| {
                acc.iter_mut().zip(h).for_each(|(a, b)| *a += b);
                acc
            },
        );
    Ok(CensusResult::from_histogram(n, k, &total))
}

/// Census by inclusion–exclusion over the chains of `fam`.
///
/// For a chain `T1 ⊊ .. ⊊ Tt` of members, `(n - |Tt|)! ∏ (|Ti| - |T_{i-1}|)!`
/// maximal chains contain all of it. Summing over chains of each length gives
/// `N_t = Σ_𝓒 C(|𝓕 ∩ 𝓒|, t)`, which binomial inversion turns into the exact
/// distribution. Chain sums are accumulated by dynamic programming over the
/// containment order, never by listing chains.
pub fn census_ie(fam: &Family, k: usize) -> Result<CensusResult> {
    let n = fam.n();
    if fam.len() > IE_MAX_MEMBERS {
        return Err(Error::Capacity(format!(
            "inclusion-exclusion census is capped at {IE_MAX_MEMBERS} members (got {})",
            fam.len()
        )));
    }
    let fact: Vec<i128> = (0..=n).map(|i| factorial(i) as i128).collect();
    let members = fam.members();
    let max_len = n + 1;
    // ways[i][t]: Σ over t-chains ending at member i of ∏ gap!.
    let mut ways = vec![vec![0i128; max_len + 1]; members.len()];
    let mut n_t = vec![0i128; max_len + 1];
    n_t[0] = fact[n];
    for i in 0..members.len() {
        let mi = members[i];
        ways[i][1] = fact[mi.len()];
        for j in 0..i {
            let mj = members[j];
            if mj.is_proper_subset_of(mi) {
                let g = fact[mi.len() - mj.len()];
                for t in 1..max_len {
                    let w = ways[j][t];
                    if w != 0 {
                        ways[i][t + 1] += w * g;
                    }
                }
            }
        }
        let tail = fact[n - mi.len()];
        for t in 1..=max_len {
            n_t[t] += ways[i][t] * tail;
        }
    }
    let mut hist = vec![0u64; max_len + 1];
    for j in 0..=max_len {
        let mut acc = 0i128;
        for t in j..=max_len {
            let c: i128 = binomial(t, j).try_into().expect("small binomial");
            let term = c * n_t[t];
            if (t - j) % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        debug_assert!(acc >= 0);
        hist[j] = acc as u64;
    }
    Ok(CensusResult::from_histogram(n, k, &hist))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{GroundSet, SubsetMask};

    fn both(fam: &Family, k: usize) -> CensusResult {
        let d = census_direct(fam, k).unwrap();
        let ie = census_ie(fam, k).unwrap();
        assert_eq!(d, ie);
        d
    }

    #[test]
    fn middle_layer_of_four() {
        let fam = Family::layers(GroundSet::new(4).unwrap(), 2, 2);
        let c = both(&fam, 2);
        assert_eq!((c.c_minus, c.c, c.c_plus), (0, 24, 0));
        assert_eq!(c.counts, BTreeMap::from([(1, 24)]));
    }

    #[test]
    fn empty_family() {
        let fam = Family::empty(GroundSet::new(3).unwrap());
        let c = both(&fam, 1);
        assert_eq!(c.counts, BTreeMap::from([(0, 6)]));
        // k = 1: "fewer than k - 1 = 0" is empty, so all 6 chains land in c.
        assert_eq!((c.c_minus, c.c, c.c_plus), (0, 6, 0));
    }

    #[test]
    fn singleton_and_pair() {
        let fam = Family::from_sets(4, &[&[1], &[1, 2]]).unwrap();
        let c = both(&fam, 2);
        assert_eq!(c.c_plus, 2);
        assert_eq!(c.total(), 24);
    }

    #[test]
    fn bottom_and_power_set() {
        let g3 = GroundSet::new(3).unwrap();
        let fam = Family::new(g3, [SubsetMask::EMPTY]).unwrap();
        assert_eq!(both(&fam, 1).counts, BTreeMap::from([(1, 6)]));
        let cube = Family::power_set(g3);
        let c = both(&cube, 4);
        assert_eq!(c.counts, BTreeMap::from([(4, 6)]));
        assert_eq!(c.c_plus, 6);
    }

    #[test]
    fn one_element_ground_set() {
        let g1 = GroundSet::new(1).unwrap();
        let fam = Family::power_set(g1);
        assert_eq!(both(&fam, 2).counts, BTreeMap::from([(2, 1)]));
        let fam = Family::new(g1, [SubsetMask(1)]).unwrap();
        assert_eq!(both(&fam, 1).counts, BTreeMap::from([(1, 1)]));
    }

    #[test]
    fn direct_refuses_large_n() {
        let fam = Family::empty(GroundSet::new(11).unwrap());
        assert!(matches!(census_direct(&fam, 1), Err(Error::Capacity(_))));
        let c = census_ie(&fam, 1).unwrap();
        assert_eq!(c.counts, BTreeMap::from([(0, 39_916_800)]));
    }

    #[test]
    fn ie_scales_past_direct_cap() {
        let fam = Family::layers(GroundSet::new(12).unwrap(), 6, 7);
        let c = census_ie(&fam, 3).unwrap();
        assert_eq!(c.counts, BTreeMap::from([(2, factorial(12))]));
    }
}
