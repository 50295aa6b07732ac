//! Chains, the k-Sperner and l-trace k-Sperner decision procedures, and the
//! LYM sum.

use num::{BigInt, BigRational, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::constructions::binomial;
use crate::error::{invalid, Result};
use crate::family::{trace_family, Family, SubsetMask};

/// A strictly nested sequence of sets, optionally read through a trace.
///
/// When `trace_on` is `Some(L)` the chain is formed by the traces `F ∩ L` of
/// the listed member sets; otherwise the members themselves are nested.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainWitness {
    pub sets: Vec<SubsetMask>,
    pub trace_on: Option<SubsetMask>,
}

impl ChainWitness {
    /// The chain as actually nested: traces if `trace_on` is set.
    pub fn nested_sets(&self) -> Vec<SubsetMask> {
        match self.trace_on {
            Some(on) => self.sets.iter().map(|s| s.intersect(on)).collect(),
            None => self.sets.clone(),
        }
    }

    pub fn is_strictly_nested(&self) -> bool {
        self.nested_sets()
            .windows(2)
            .all(|w| w[0].is_proper_subset_of(w[1]))
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }
}

impl Serialize for ChainWitness {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("ChainWitness", 3)?;
        st.serialize_field("trace_on", &self.trace_on.map(|l| l.elements()))?;
        st.serialize_field(
            "members",
            &self.sets.iter().map(|s| s.elements()).collect::<Vec<_>>(),
        )?;
        st.serialize_field(
            "chain",
            &self.nested_sets().iter().map(|s| s.elements()).collect::<Vec<_>>(),
        )?;
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LongestChain {
    pub length: usize,
    pub witness: ChainWitness,
}

/// For each storage index, the length of the longest chain starting there and
/// going upward.
fn upward_heights(members: &[SubsetMask]) -> Vec<usize> {
    let mut up = vec![1usize; members.len()];
    for i in (0..members.len()).rev() {
        let mi = members[i];
        let mut best = 0;
        for j in i + 1..members.len() {
            if up[j] > best && mi.is_proper_subset_of(members[j]) {
                best = up[j];
            }
        }
        up[i] = best + 1;
    }
    up
}

/// Lexicographically least (by storage index) chain of exactly `length` sets.
fn least_chain(members: &[SubsetMask], up: &[usize], length: usize) -> Option<Vec<usize>> {
    if length == 0 {
        return Some(Vec::new());
    }
    let mut chain = Vec::with_capacity(length);
    let mut cur = (0..members.len()).find(|&i| up[i] >= length)?;
    chain.push(cur);
    for remaining in (1..length).rev() {
        cur = (cur + 1..members.len())
            .find(|&j| up[j] >= remaining && members[cur].is_proper_subset_of(members[j]))
            .expect("height table guarantees a continuation");
        chain.push(cur);
    }
    Some(chain)
}

/// Longest chain in `fam` together with the least witness achieving it.
pub fn longest_chain(fam: &Family) -> LongestChain {
    let members = fam.members();
    let up = upward_heights(members);
    let length = up.iter().copied().max().unwrap_or(0);
    let chain = least_chain(members, &up, length).unwrap_or_default();
    LongestChain {
        length,
        witness: ChainWitness {
            sets: chain.into_iter().map(|i| members[i]).collect(),
            trace_on: None,
        },
    }
}

/// `fam` contains no chain of length `k + 1`.
pub fn is_k_sperner(fam: &Family, k: usize) -> bool {
    upward_heights(fam.members()).into_iter().all(|h| h <= k)
}

/// Result of an l-trace k-Sperner check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceSpernerOutcome {
    pub holds: bool,
    /// The least violating `L` and the least `(k+1)`-chain in `𝓕|_L`.
    pub violation: Option<ChainWitness>,
}

/// Checks a single trace, returning the least `(k+1)`-chain if one exists.
fn trace_violation(fam: &Family, on: SubsetMask, k: usize) -> Option<ChainWitness> {
    let traced = trace_family(fam, on);
    let members = traced.members();
    let up = upward_heights(members);
    if up.iter().all(|&h| h <= k) {
        return None;
    }
    let chain = least_chain(members, &up, k + 1)?;
    // Map each trace back to its least preimage in storage order.
    let sets = chain
        .into_iter()
        .map(|i| {
            let t = members[i];
            fam.iter()
                .find(|m| m.intersect(on) == t)
                .expect("every trace has a preimage")
        })
        .collect();
    Some(ChainWitness {
        sets,
        trace_on: Some(on),
    })
}

/// Decides whether every trace of `fam` on an `l`-subset of `[n]` is
/// `k`-Sperner.
///
/// `l`-subsets are scanned in lexicographic order of their element lists;
/// the reported violation is the one for the least offending `L`, whatever
/// the thread count.
pub fn is_l_trace_k_sperner(fam: &Family, l: usize, k: usize) -> Result<TraceSpernerOutcome> {
    if l > fam.n() {
        return invalid(format!("trace size l = {l} exceeds n = {}", fam.n()));
    }
    let subsets: Vec<SubsetMask> = fam.ground().subsets_of_size(l).collect();
    let violation = if subsets.len() * fam.len() < 4096 {
        subsets.iter().find_map(|&on| trace_violation(fam, on, k))
    } else {
        subsets
            .par_iter()
            .find_map_first(|&on| trace_violation(fam, on, k))
    };
    Ok(TraceSpernerOutcome {
        holds: violation.is_none(),
        violation,
    })
}

/// `Σ_{F ∈ 𝓕} 1 / C(n, |F|)`, exactly.
pub fn lym_sum(fam: &Family) -> BigRational {
    let n = fam.n();
    let mut by_size = vec![0u64; n + 1];
    for m in fam.iter() {
        by_size[m.len()] += 1;
    }
    by_size
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .fold(BigRational::zero(), |acc, (size, count)| {
            acc + BigRational::new(BigInt::from(count), BigInt::from(binomial(n, size)))
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::GroundSet;
    use num::One;

    fn s(e: &[usize]) -> SubsetMask {
        SubsetMask::from_elements(e.iter().copied())
    }

    fn middle4() -> Family {
        Family::layers(GroundSet::new(4).unwrap(), 2, 2)
    }

    #[test]
    fn longest_chain_examples() {
        let nest = Family::from_sets(3, &[&[], &[1], &[1, 2]]).unwrap();
        let lc = longest_chain(&nest);
        assert_eq!(lc.length, 3);
        assert_eq!(lc.witness.sets, vec![s(&[]), s(&[1]), s(&[1, 2])]);

        assert_eq!(longest_chain(&middle4()).length, 1);

        let cube = Family::power_set(GroundSet::new(3).unwrap());
        let lc = longest_chain(&cube);
        assert_eq!(lc.length, 4);
        assert_eq!(lc.witness.sets, vec![s(&[]), s(&[1]), s(&[1, 2]), s(&[1, 2, 3])]);

        let empty = Family::empty(GroundSet::new(3).unwrap());
        assert_eq!(longest_chain(&empty).length, 0);
    }

    #[test]
    fn k_sperner_examples() {
        assert!(is_k_sperner(&middle4(), 1));
        let nest = Family::from_sets(3, &[&[], &[1], &[1, 2]]).unwrap();
        assert!(!is_k_sperner(&nest, 2));
        assert!(is_k_sperner(&nest, 3));
    }

    #[test]
    fn trace_sperner_examples() {
        assert!(is_l_trace_k_sperner(&middle4(), 3, 2).unwrap().holds);

        let cube = Family::power_set(GroundSet::new(3).unwrap());
        let out = is_l_trace_k_sperner(&cube, 3, 3).unwrap();
        assert!(!out.holds);
        let v = out.violation.unwrap();
        assert_eq!(v.trace_on, Some(s(&[1, 2, 3])));
        assert_eq!(v.len(), 4);
        assert!(v.is_strictly_nested());

        let empty = Family::empty(GroundSet::new(3).unwrap());
        for l in 0..=3 {
            assert!(is_l_trace_k_sperner(&empty, l, 1).unwrap().holds);
        }
    }

    #[test]
    fn trace_on_empty_set_always_holds() {
        let cube = Family::power_set(GroundSet::new(3).unwrap());
        assert!(is_l_trace_k_sperner(&cube, 0, 1).unwrap().holds);
    }

    #[test]
    fn least_violation_is_reported() {
        // {1} ⊂ {1,2} survives on L = {1,2} but not on {1,3} ({1} and {1} collide).
        let fam = Family::from_sets(3, &[&[], &[1], &[1, 2]]).unwrap();
        let v = is_l_trace_k_sperner(&fam, 2, 2).unwrap().violation.unwrap();
        assert_eq!(v.trace_on, Some(s(&[1, 2])));
        assert_eq!(v.sets, vec![s(&[]), s(&[1]), s(&[1, 2])]);
    }

    #[test]
    fn trace_size_beyond_n_is_rejected() {
        assert!(is_l_trace_k_sperner(&middle4(), 5, 1).is_err());
    }

    #[test]
    fn lym_examples() {
        assert_eq!(lym_sum(&middle4()), BigRational::one());
        let g3 = GroundSet::new(3).unwrap();
        let bottom = Family::new(g3, [SubsetMask::EMPTY]).unwrap();
        assert_eq!(lym_sum(&bottom), BigRational::one());
        assert_eq!(
            lym_sum(&Family::power_set(g3)),
            BigRational::from_integer(BigInt::from(4))
        );
        let third = Family::from_sets(3, &[&[1]]).unwrap();
        assert_eq!(lym_sum(&third), BigRational::new(1.into(), 3.into()));
    }
}
