//! Exhaustive checks of the chain-set bounds, the overlap multiplicities, the
//! `c⁻ >= c⁺` inequality and the LYM-type bound for (n-1)-trace k-Sperner
//! families.

use std::collections::HashMap;

use num::{BigInt, BigRational, BigUint, ToPrimitive, Zero};
use serde::Serialize;

use super::chain_sets::{starred_chain_set_size, PartIndex};
use super::chains::{enumerate_k_chains, ChainKind, KChain};
use super::{census_direct, census_ie, CensusResult, DIRECT_MAX_N, IE_MAX_MEMBERS};
use crate::error::{Error, Result};
use crate::family::{Family, Permutation, SubsetMask};
use crate::report::Check;
use crate::sperner::{is_l_trace_k_sperner, lym_sum};

/// Largest `n` for checks that filter all of `S_n`.
pub const VERIFY_MAX_N: usize = 8;

fn sets_json(sets: &[SubsetMask]) -> Vec<Vec<usize>> {
    sets.iter().map(|s| s.elements()).collect()
}

fn require_trace_sperner(fam: &Family, k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::Precondition(format!("k must be at least 2, got {k}")));
    }
    let n = fam.n();
    let out = is_l_trace_k_sperner(fam, n - 1, k)?;
    if !out.holds {
        return Err(Error::Precondition(format!(
            "family is not ({}-1)-trace {k}-Sperner",
            n
        )));
    }
    Ok(())
}

fn require_small(fam: &Family) -> Result<()> {
    if fam.n() > VERIFY_MAX_N {
        return Err(Error::Capacity(format!(
            "chain-set verification filters S_n and is capped at n <= {VERIFY_MAX_N}, got {}",
            fam.n()
        )));
    }
    Ok(())
}

/// The size hypothesis `4 <= |F| <= n - 1` for every member.
fn require_size_band(fam: &Family) -> Result<()> {
    let n = fam.n();
    if let Some(bad) = fam.iter().find(|m| m.len() < 4 || m.len() + 1 > n) {
        return Err(Error::Precondition(format!(
            "member {bad} violates 4 <= |F| <= n - 1 = {}",
            n.saturating_sub(1)
        )));
    }
    Ok(())
}

fn census_any(fam: &Family, k: usize) -> Result<CensusResult> {
    if fam.len() <= IE_MAX_MEMBERS {
        census_ie(fam, k)
    } else if fam.n() <= DIRECT_MAX_N {
        census_direct(fam, k)
    } else {
        Err(Error::Capacity("family too large for either census engine".into()))
    }
}

/// A maximal chain in a k-chain's chain set meeting the family too often.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimCounterexample {
    pub chain: Vec<Vec<usize>>,
    pub kind: ChainKind,
    pub x: usize,
    pub z: usize,
    pub sigma: Option<Vec<usize>>,
    pub maximal_chain: Vec<usize>,
    pub meets: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimsReport {
    pub n: usize,
    pub k: usize,
    /// Type-I k-chains examined.
    pub type1_chains: usize,
    /// Type-II-ℓ k-chains with ℓ >= 2 examined.
    pub type2_chains: usize,
    /// (maximal chain, part) memberships examined for the two claims.
    pub memberships: u64,
    /// Largest `|𝓒 ∩ 𝓕|` seen across those memberships.
    pub max_meet: Option<usize>,
    pub counterexamples: Vec<ClaimCounterexample>,
    /// Type-II-1 chains are outside the claims; their memberships are checked
    /// against the same `k - 2` bound and reported separately.
    pub type2_l1_chains: usize,
    pub type2_l1_counterexamples: usize,
    pub holds: bool,
}

impl ClaimsReport {
    pub fn checks(&self) -> Vec<Check> {
        vec![Check::new(
            "claims_type1_and_type2",
            self.holds,
            serde_json::to_value(self.counterexamples.first()).unwrap_or_default(),
        )]
    }
}

const MAX_REPORTED: usize = 16;

/// Every maximal chain in the chain set of a type-I k-chain, or of a
/// type-II-ℓ k-chain with `ℓ >= 2`, meets `fam` in at most `k - 2` sets.
pub fn verify_claims(fam: &Family, k: usize) -> Result<ClaimsReport> {
    require_small(fam)?;
    require_trace_sperner(fam, k)?;
    let n = fam.n();
    let chains = enumerate_k_chains(fam, k);
    let index = PartIndex::new(&chains);
    let mut report = ClaimsReport {
        n,
        k,
        type1_chains: 0,
        type2_chains: 0,
        memberships: 0,
        max_meet: None,
        counterexamples: Vec::new(),
        type2_l1_chains: 0,
        type2_l1_counterexamples: 0,
        holds: true,
    };
    for ch in &chains {
        match ch.kind() {
            ChainKind::TypeI => report.type1_chains += 1,
            ChainKind::TypeII(1) => report.type2_l1_chains += 1,
            ChainKind::TypeII(_) => report.type2_chains += 1,
        }
    }
    for perm in Permutation::all(n) {
        let prefix = perm.prefix_sets();
        let meets = prefix.iter().filter(|s| fam.contains(**s)).count();
        for (id, part) in index.matches(&prefix) {
            let ch = &chains[id];
            let bad = meets + 2 > k;
            if ch.kind() == ChainKind::TypeII(1) {
                report.type2_l1_counterexamples += bad as usize;
                continue;
            }
            report.memberships += 1;
            report.max_meet = report.max_meet.max(Some(meets));
            if bad {
                report.holds = false;
                if report.counterexamples.len() < MAX_REPORTED {
                    report.counterexamples.push(ClaimCounterexample {
                        chain: sets_json(ch.sets()),
                        kind: ch.kind(),
                        x: part.x,
                        z: part.z,
                        sigma: part.sigma.clone(),
                        maximal_chain: perm.images(),
                        meets,
                    });
                }
            }
        }
    }
    Ok(report)
}

/// Overlap multiplicity of one k-chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SStarEntry {
    pub chain: Vec<Vec<usize>>,
    pub kind: ChainKind,
    /// `|𝓒*(F1..Fk)|`.
    pub starred_size: u64,
    /// `max s*(𝓒, 𝓕)` over `𝓒 ∈ 𝓒*(F1..Fk)`; 0 when the starred set is empty.
    pub s_star: usize,
    /// `max s*(𝓒, 𝓕)` over maximal chains through all of `F1..Fk`.
    pub literal_max: usize,
    /// `<= 2` for type I, `= 1` for type II (vacuous when the starred set is
    /// empty).
    pub bound_holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SStarReport {
    pub n: usize,
    pub k: usize,
    pub entries: Vec<SStarEntry>,
    pub max_type1: usize,
    pub max_type2: usize,
    pub violations: usize,
    /// Maximal chains lying in some starred chain set.
    pub covered_chains: u64,
    /// `Σ |𝓒*(F1..Fk)| / s*(F1..Fk)` over chains with a nonempty starred set.
    pub overlap_bound: String,
    pub c_minus: u64,
    /// `c⁻ >= overlap_bound`.
    pub c_minus_dominates: bool,
    pub holds: bool,
}

impl SStarReport {
    pub fn checks(&self) -> Vec<Check> {
        let worst = self.entries.iter().find(|e| !e.bound_holds);
        vec![
            Check::new(
                "s_star_bounds",
                self.violations == 0,
                serde_json::to_value(worst).unwrap_or_default(),
            ),
            Check::new(
                "c_minus_dominates_overlap_sum",
                self.c_minus_dominates,
                serde_json::json!({"c_minus": self.c_minus, "bound": self.overlap_bound}),
            ),
        ]
    }
}

/// Computes `s*(𝓒, 𝓕)` for every maximal chain and `s*(F1..Fk)` for every
/// k-chain, and checks `s* <= 2` (type I) and `s* = 1` (type II).
pub fn s_star(fam: &Family, k: usize) -> Result<SStarReport> {
    require_small(fam)?;
    require_trace_sperner(fam, k)?;
    let n = fam.n();
    let chains = enumerate_k_chains(fam, k);
    let chain_id: HashMap<&[SubsetMask], usize> =
        chains.iter().enumerate().map(|(i, c)| (c.sets(), i)).collect();
    let index = PartIndex::new(&chains);
    let mut starred_max = vec![0usize; chains.len()];
    let mut literal_max = vec![0usize; chains.len()];
    let mut hits = Vec::new();
    let mut covered = 0u64;
    for perm in Permutation::all(n) {
        let prefix = perm.prefix_sets();
        hits.clear();
        hits.extend(
            index
                .matches(&prefix)
                .filter(|(_, part)| part.contains_starred(&prefix))
                .map(|(id, _)| id),
        );
        let s = hits.len();
        if s > 0 {
            covered += 1;
        }
        for &id in &hits {
            starred_max[id] = starred_max[id].max(s);
        }
        // Under the hypothesis the chain meets at most k members, so it
        // contains at most one k-chain.
        let met: Vec<SubsetMask> = prefix.iter().copied().filter(|m| fam.contains(*m)).collect();
        if met.len() == k {
            if let Some(&id) = chain_id.get(met.as_slice()) {
                literal_max[id] = literal_max[id].max(s);
            }
        }
    }

    let mut entries = Vec::with_capacity(chains.len());
    let mut bound = BigRational::zero();
    let (mut max1, mut max2, mut violations) = (0, 0, 0);
    for (id, ch) in chains.iter().enumerate() {
        let size = starred_chain_set_size(ch);
        let s = starred_max[id];
        let ok = match ch.kind() {
            ChainKind::TypeI => s <= 2,
            ChainKind::TypeII(_) => s == 1 || size.is_zero(),
        };
        match ch.kind() {
            ChainKind::TypeI => max1 = max1.max(s),
            ChainKind::TypeII(_) => max2 = max2.max(s),
        }
        if !ok {
            violations += 1;
        }
        if s > 0 {
            bound += BigRational::new(BigInt::from(size.clone()), BigInt::from(s));
        }
        entries.push(SStarEntry {
            chain: sets_json(ch.sets()),
            kind: ch.kind(),
            starred_size: size.to_u64().expect("n <= 8"),
            s_star: s,
            literal_max: literal_max[id],
            bound_holds: ok,
        });
    }
    let census = census_any(fam, k)?;
    let c_minus_dominates = BigRational::from_integer(BigInt::from(census.c_minus)) >= bound;
    Ok(SStarReport {
        n,
        k,
        entries,
        max_type1: max1,
        max_type2: max2,
        violations,
        covered_chains: covered,
        overlap_bound: bound.to_string(),
        c_minus: census.c_minus,
        c_minus_dominates,
        holds: violations == 0 && c_minus_dominates,
    })
}

/// Whether a type-I k-chain with `|F1| >= 5` exists.
fn strictness_witness(chains: &[KChain]) -> Option<&KChain> {
    chains
        .iter()
        .find(|c| c.kind() == ChainKind::TypeI && c.first().len() >= 5)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub n: usize,
    pub k: usize,
    pub census: CensusResult,
    pub c_minus: u64,
    pub c_plus: u64,
    /// `c⁻ >= c⁺`
    pub holds: bool,
    /// A type-I k-chain with `|F1| >= 5` exists.
    pub strict_hypothesis: bool,
    pub strict_witness: Option<Vec<Vec<usize>>>,
    /// `c⁻ > c⁺`
    pub strict: bool,
    /// Per-chain weights: `(|F1|-2)/2 · w >= w` for type I and `w >= w` for
    /// type II, for every k-chain.
    pub termwise_holds: bool,
}

impl LemmaReport {
    pub fn checks(&self) -> Vec<Check> {
        let mut out = vec![
            Check::new(
                "c_minus_at_least_c_plus",
                self.holds,
                serde_json::json!({"c_minus": self.c_minus, "c_plus": self.c_plus}),
            ),
            Check::new("termwise_weight_inequality", self.termwise_holds, serde_json::Value::Null),
        ];
        if self.strict_hypothesis {
            out.push(Check::new(
                "c_minus_exceeds_c_plus",
                self.strict,
                serde_json::to_value(&self.strict_witness).unwrap_or_default(),
            ));
        }
        out
    }
}

/// `c⁻ >= c⁺` for an (n-1)-trace k-Sperner family with all members of size
/// `4..=n-1`, and `c⁻ > c⁺` when a type-I k-chain has `|F1| >= 5`.
///
/// Refuses (precondition error) outside these hypotheses.
pub fn verify_lemma_21(fam: &Family, k: usize) -> Result<LemmaReport> {
    require_size_band(fam)?;
    require_trace_sperner(fam, k)?;
    let census = census_any(fam, k)?;
    let chains = enumerate_k_chains(fam, k);
    let witness = strictness_witness(&chains);
    let termwise_holds = chains.iter().all(|c| {
        let w = c.weight();
        match c.kind() {
            ChainKind::TypeI => BigUint::from(c.first().len().saturating_sub(2)) * &w >= w * 2u32,
            ChainKind::TypeII(_) => true,
        }
    });
    Ok(LemmaReport {
        n: fam.n(),
        k,
        c_minus: census.c_minus,
        c_plus: census.c_plus,
        holds: census.c_minus >= census.c_plus,
        strict_hypothesis: witness.is_some(),
        strict_witness: witness.map(|c| sets_json(c.sets())),
        strict: census.c_minus > census.c_plus,
        termwise_holds,
        census,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorollaryReport {
    pub n: usize,
    pub k: usize,
    /// Exact LYM sum as `p/q`.
    pub sum: String,
    #[serde(skip)]
    pub sum_exact: BigRational,
    /// `sum <= k - 1`
    pub holds: bool,
    pub strict_hypothesis: bool,
    /// `sum < k - 1`
    pub strict: bool,
}

impl CorollaryReport {
    pub fn checks(&self) -> Vec<Check> {
        let mut out = vec![Check::new(
            "lym_sum_at_most_k_minus_1",
            self.holds,
            serde_json::json!({"sum": self.sum, "bound": self.k - 1}),
        )];
        if self.strict_hypothesis {
            out.push(Check::new(
                "lym_sum_below_k_minus_1",
                self.strict,
                serde_json::json!({"sum": self.sum}),
            ));
        }
        out
    }
}

/// `Σ_{F ∈ 𝓕} 1 / C(n, |F|) <= k - 1` under the same hypotheses as
/// [`verify_lemma_21`], strict when a type-I k-chain has `|F1| >= 5`.
pub fn verify_corollary_26(fam: &Family, k: usize) -> Result<CorollaryReport> {
    require_size_band(fam)?;
    require_trace_sperner(fam, k)?;
    let sum = lym_sum(fam);
    let bound = BigRational::from_integer(BigInt::from(k - 1));
    let chains = enumerate_k_chains(fam, k);
    Ok(CorollaryReport {
        n: fam.n(),
        k,
        sum: sum.to_string(),
        holds: sum <= bound,
        strict_hypothesis: strictness_witness(&chains).is_some(),
        strict: sum < bound,
        sum_exact: sum,
    })
}
