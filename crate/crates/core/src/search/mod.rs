//! Exact `f(n, k, l)`: the largest l-trace k-Sperner family in `2^[n]`.
//!
//! [`f_exact`] runs a branch and bound with forward checking and a
//! symmetric-chain bound, restricted at the first two levels to orbit
//! representatives. It returns a [`SearchCertificate`] listing every
//! extremal family up to relabeling. [`f_exact_oracle`] is an independent
//! brute force for `n <= 4`.

mod engine;
mod oracle;
pub mod symmetry;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num::BigUint;
use serde::{Deserialize, Serialize};

pub use oracle::{f_exact_oracle, ORACLE_MAX_N};

use crate::constructions::{build_g0, build_g0_prime, sigma};
use crate::error::{Error, Result};
use crate::family::{canonical_form, Family, GroundSet, SubsetMask, CANONICAL_MAX_N};
use crate::sperner::is_l_trace_k_sperner;

/// Largest `n` searched without symmetry reduction.
pub const SEARCH_MAX_N_PLAIN: usize = 7;
/// Largest `n` searched with symmetry reduction.
pub const SEARCH_MAX_N_SYMMETRIC: usize = 9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub n: usize,
    pub k: usize,
    pub l: usize,
    /// Wall-clock budget in seconds; `None` runs to completion.
    pub time_budget: Option<f64>,
    pub symmetry: bool,
    pub lower_bound_seed: Option<Family>,
}

impl SearchConfig {
    pub fn new(n: usize, k: usize, l: usize) -> Self {
        SearchConfig {
            n,
            k,
            l,
            time_budget: None,
            symmetry: true,
            lower_bound_seed: None,
        }
    }

    pub fn with_seed(mut self, seed: Family) -> Self {
        self.lower_bound_seed = Some(seed);
        self
    }

    pub fn with_budget(mut self, seconds: f64) -> Self {
        self.time_budget = Some(seconds);
        self
    }

    pub fn with_symmetry(mut self, on: bool) -> Self {
        self.symmetry = on;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let cap = if self.symmetry {
            SEARCH_MAX_N_SYMMETRIC
        } else {
            SEARCH_MAX_N_PLAIN
        };
        if self.n == 0 || self.n > cap {
            return Err(Error::Capacity(format!(
                "search supports 1 <= n <= {cap} with symmetry {}, got n = {}",
                if self.symmetry { "on" } else { "off" },
                self.n
            )));
        }
        if self.k == 0 {
            return Err(Error::InvalidArgument("k must be at least 1".into()));
        }
        if self.l > self.n {
            return Err(Error::InvalidArgument(format!(
                "trace size l = {} exceeds n = {}",
                self.l, self.n
            )));
        }
        if let Some(b) = self.time_budget {
            if !(b.is_finite() && b >= 0.0) {
                return Err(Error::InvalidArgument(format!("bad time budget {b}")));
            }
        }
        if let Some(seed) = &self.lower_bound_seed {
            if seed.n() != self.n {
                return Err(Error::InvalidArgument(format!(
                    "seed family is over [{}], search is over [{}]",
                    seed.n(),
                    self.n
                )));
            }
        }
        Ok(())
    }
}

/// A claimed `f(n, k, l)` with its extremal families.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchCertificate {
    pub config: SearchConfig,
    pub value: usize,
    /// One family per extremal isomorphism class, sorted. Canonical forms
    /// when `n <= 8`; otherwise the representatives the search reached.
    pub witnesses: Vec<Family>,
    pub witnesses_canonical: bool,
    /// The seed passed the property check and entered as a lower bound.
    pub seed_accepted: bool,
    /// The whole space was explored or pruned; `false` after the budget ran
    /// out, in which case `value` is only a lower bound.
    pub exhaustive: bool,
    pub node_count: u64,
    pub elapsed_ms: u64,
}

impl SearchCertificate {
    /// Re-checks every witness with the general decision procedure.
    pub fn recheck(&self) -> Result<Vec<(usize, bool)>> {
        let c = &self.config;
        self.witnesses
            .iter()
            .enumerate()
            .map(|(i, w)| {
                let ok = w.n() == c.n
                    && w.len() == self.value
                    && is_l_trace_k_sperner(w, c.l, c.k)?.holds;
                Ok((i, ok))
            })
            .collect()
    }

    /// Every relabeling of every witness, sorted and deduplicated.
    pub fn literal_witnesses(&self) -> Result<Vec<Family>> {
        let mut all = BTreeSet::new();
        for w in &self.witnesses {
            all.extend(w.orbit()?);
        }
        Ok(all.into_iter().collect())
    }
}

fn canonical_set(n: usize, families: Vec<Vec<u32>>) -> Result<(Vec<Family>, bool)> {
    let ground = GroundSet::new(n)?;
    let canonical = n <= CANONICAL_MAX_N;
    let mut out = BTreeSet::new();
    for f in families {
        let fam = Family::new(ground, f.into_iter().map(SubsetMask))?;
        out.insert(if canonical { canonical_form(&fam)? } else { fam });
    }
    Ok((out.into_iter().collect(), canonical))
}

/// Exact `f(n, k, l)` with every extremal family up to relabeling.
pub fn f_exact(cfg: &SearchConfig) -> Result<SearchCertificate> {
    cfg.validate()?;
    let start = Instant::now();
    let (n, k, l) = (cfg.n, cfg.k, cfg.l);
    let ground = GroundSet::new(n)?;
    let seed = match &cfg.lower_bound_seed {
        Some(s) if is_l_trace_k_sperner(s, l, k)?.holds => Some(s.clone()),
        _ => None,
    };
    let seed_accepted = seed.is_some();
    let finish = |value, witnesses: Vec<Family>, canonical, exhaustive, nodes| SearchCertificate {
        config: cfg.clone(),
        value,
        witnesses,
        witnesses_canonical: canonical,
        seed_accepted,
        exhaustive,
        node_count: nodes,
        elapsed_ms: start.elapsed().as_millis() as u64,
    };

    // Traces on fewer than k elements carry at most l + 1 <= k nested sets.
    if l < k {
        let full = Family::power_set(ground);
        return Ok(finish(1 << n, vec![full], true, true, 0));
    }

    let deadline = cfg
        .time_budget
        .map(|s| start + Duration::from_secs_f64(s));
    let eng = engine::Engine::new(n, k, l, cfg.symmetry, deadline);
    let floor = seed.as_ref().map_or(0, |s| s.len());
    let out = eng.solve(floor);
    if out.families.is_empty() {
        // The budget ran out before any subtree matched the seed; fall back
        // to the seed, or to a single set, as the lower bound.
        let fallback = seed.unwrap_or_else(|| {
            Family::new(ground, [SubsetMask(0)]).expect("empty set lies in [n]")
        });
        let (w, canon) = canonical_set(n, vec![fallback.iter().map(|m| m.bits()).collect()])?;
        return Ok(finish(fallback.len(), w, canon, false, out.nodes));
    }
    let (witnesses, canon) = canonical_set(n, out.families)?;
    Ok(finish(out.best, witnesses, canon, !out.timed_out, out.nodes))
}

/// `sigma(n, k - (n - l))` when `1 <= n - l < k`, else `None`.
fn conjecture_target(n: usize, k: usize, l: usize) -> Option<BigUint> {
    let drop = n.checked_sub(l)?;
    if drop == 0 || drop >= k {
        return None;
    }
    sigma(n, k - drop).ok()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConjectureOutcome {
    Equal,
    SearchLowerBoundOnly,
    ValueDiffers,
    OutsideRegime,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConjectureReport {
    pub n: usize,
    pub k: usize,
    /// Trace size passed to the search.
    pub l: usize,
    /// `Σ(n, k - (n - l))`, when `1 <= n - l < k`.
    pub sigma: Option<String>,
    pub value: usize,
    pub exhaustive: bool,
    /// `value >= sigma`; the seeded construction guarantees it.
    pub lower_bound_holds: Option<bool>,
    pub outcome: ConjectureOutcome,
    /// An extremal family when the exact value differs from `sigma`.
    pub witness: Option<Family>,
}

/// Compares a finished certificate against the closed form.
pub fn conjecture_from_certificate(cert: &SearchCertificate) -> ConjectureReport {
    let c = &cert.config;
    let target = conjecture_target(c.n, c.k, c.l);
    let value = BigUint::from(cert.value);
    let outcome = match &target {
        None => ConjectureOutcome::OutsideRegime,
        Some(_) if !cert.exhaustive => ConjectureOutcome::SearchLowerBoundOnly,
        Some(t) if *t == value => ConjectureOutcome::Equal,
        Some(_) => ConjectureOutcome::ValueDiffers,
    };
    ConjectureReport {
        n: c.n,
        k: c.k,
        l: c.l,
        sigma: target.as_ref().map(|t| t.to_string()),
        value: cert.value,
        exhaustive: cert.exhaustive,
        lower_bound_holds: target.as_ref().map(|t| value >= *t),
        witness: (outcome == ConjectureOutcome::ValueDiffers)
            .then(|| cert.witnesses.first().cloned())
            .flatten(),
        outcome,
    }
}

/// The search configuration used for a conjecture point: seeded with the
/// layered construction when it is defined.
pub fn seeded_config(n: usize, k: usize, l: usize) -> SearchConfig {
    let cfg = SearchConfig::new(n, k, l);
    match n.checked_sub(l).map(|d| build_g0(n, k, d)) {
        Some(Ok(g0)) => cfg.with_seed(g0),
        _ => cfg,
    }
}

/// Runs [`f_exact`] at `(n, k, l)` and compares with `Σ(n, k - (n - l))`.
pub fn verify_conjecture_point(n: usize, k: usize, l: usize) -> Result<ConjectureReport> {
    Ok(conjecture_from_certificate(&f_exact(&seeded_config(n, k, l))?))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UniquenessReport {
    pub n: usize,
    pub k: usize,
    pub value: usize,
    pub sigma: String,
    pub exhaustive: bool,
    pub value_equals_sigma: bool,
    /// `G0`, plus `G0'` when `n + k` is odd.
    pub expected: Vec<Family>,
    /// Every extremal family, as literal subsets of `2^[n]`.
    pub actual: Vec<Family>,
    /// Whether `actual == expected`; `None` when the comparison does not
    /// apply (non-exhaustive search or value different from `sigma`).
    pub matches: Option<bool>,
    pub parity_note: String,
}

const PARITY_NOTE: &str = "G0' consists of k-1 layers starting at (n-(k-1))/2, so it exists \
                           exactly when n-(k-1) is even, i.e. when n+k is odd";

/// Compares the literal extremal families of an `(n-1)`-trace search with
/// `{G0}` or `{G0, G0'}`.
pub fn uniqueness_from_certificate(cert: &SearchCertificate) -> Result<UniquenessReport> {
    let c = &cert.config;
    let (n, k) = (c.n, c.k);
    if k < 2 || k > n || c.l + 1 != n {
        return Err(Error::Precondition(format!(
            "uniqueness compares (n-1)-trace searches with 2 <= k <= n, got n={n}, k={k}, l={}",
            c.l
        )));
    }
    let target = sigma(n, k - 1)?;
    let mut expected = vec![build_g0(n, k, 1)?];
    if (n + k) % 2 == 1 {
        expected.push(build_g0_prime(n, k, 1)?);
    }
    expected.sort();
    let actual = cert.literal_witnesses()?;
    let equal = BigUint::from(cert.value) == target;
    Ok(UniquenessReport {
        n,
        k,
        value: cert.value,
        sigma: target.to_string(),
        exhaustive: cert.exhaustive,
        value_equals_sigma: equal,
        matches: (cert.exhaustive && equal).then(|| actual == expected),
        expected,
        actual,
        parity_note: PARITY_NOTE.to_string(),
    })
}

/// Exhaustive search at `(n, k, n-1)` followed by the literal comparison.
pub fn verify_uniqueness(n: usize, k: usize) -> Result<UniquenessReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let cert = f_exact(&seeded_config(n, k, n - 1))?;
    uniqueness_from_certificate(&cert)
}

/// One row of the argument-order comparison: `f(n, n-1, 1)` as written
/// next to the swapped `f(n, 1, n-1)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ArgumentOrderRow {
    pub n: usize,
    /// `f(n, k = n-1, l = 1)`.
    pub as_written: usize,
    pub as_written_exhaustive: bool,
    /// `f(n, k = 1, l = n-1)`.
    pub swapped: usize,
    pub swapped_exhaustive: bool,
    /// `Σ(n, 1)`, the size of the middle layer.
    pub middle_layer: String,
}

/// Both readings of the `O(Σ(n,1)/n)` estimate, computed for each `n` in
/// `ns` (each `n >= 2`).
pub fn argument_order_table(ns: &[usize], budget: Option<f64>) -> Result<Vec<ArgumentOrderRow>> {
    ns.iter()
        .map(|&n| {
            if n < 2 {
                return Err(Error::InvalidArgument(format!("need n >= 2, got {n}")));
            }
            let mut a = SearchConfig::new(n, n - 1, 1);
            let mut b = SearchConfig::new(n, 1, n - 1);
            if let Some(s) = budget {
                a = a.with_budget(s);
                b = b.with_budget(s);
            }
            let a = f_exact(&a)?;
            let b = f_exact(&b)?;
            Ok(ArgumentOrderRow {
                n,
                as_written: a.value,
                as_written_exhaustive: a.exhaustive,
                swapped: b.value,
                swapped_exhaustive: b.exhaustive,
                middle_layer: sigma(n, 1)?.to_string(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Values from an independent brute force, indexed `[n-1][k-1][l]`.
    const FROZEN: [[[usize; 5]; 4]; 4] = [
        [[2, 1, 0, 0, 0], [2, 2, 0, 0, 0], [2, 2, 0, 0, 0], [2, 2, 0, 0, 0]],
        [[4, 1, 2, 0, 0], [4, 4, 3, 0, 0], [4, 4, 4, 0, 0], [4, 4, 4, 0, 0]],
        [[8, 1, 1, 3, 0], [8, 8, 4, 6, 0], [8, 8, 8, 7, 0], [8, 8, 8, 8, 0]],
        [[16, 1, 1, 2, 6], [16, 16, 5, 6, 10], [16, 16, 16, 11, 14], [16, 16, 16, 16, 15]],
    ];

    #[test]
    fn frozen_values_with_and_without_symmetry() {
        for n in 1..=4 {
            for k in 1..=4 {
                for l in 0..=n {
                    let want = FROZEN[n - 1][k - 1][l];
                    for sym in [true, false] {
                        let cert = f_exact(&SearchConfig::new(n, k, l).with_symmetry(sym)).unwrap();
                        assert_eq!(cert.value, want, "n={n} k={k} l={l} sym={sym}");
                        assert!(cert.exhaustive);
                        assert!(cert.recheck().unwrap().iter().all(|&(_, ok)| ok));
                    }
                }
            }
        }
    }

    #[test]
    fn witness_classes_agree_across_symmetry() {
        for (n, k, l) in [(3, 2, 2), (4, 3, 3), (4, 2, 3), (4, 1, 2), (3, 1, 3)] {
            let a = f_exact(&SearchConfig::new(n, k, l)).unwrap();
            let b = f_exact(&SearchConfig::new(n, k, l).with_symmetry(false)).unwrap();
            assert_eq!(a.witnesses, b.witnesses, "n={n} k={k} l={l}");
        }
    }

    #[test]
    fn known_extremal_families() {
        let cert = f_exact(&SearchConfig::new(4, 3, 3)).unwrap();
        let lits: Vec<Vec<u32>> = cert
            .literal_witnesses()
            .unwrap()
            .iter()
            .map(|f| {
                let mut v: Vec<u32> = f.iter().map(|m| m.bits()).collect();
                v.sort();
                v
            })
            .collect();
        assert_eq!(
            lits,
            vec![
                vec![0, 1, 2, 3, 4, 5, 6, 8, 9, 10, 12],
                vec![3, 5, 6, 7, 9, 10, 11, 12, 13, 14, 15]
            ]
        );
    }

    #[test]
    fn seed_does_not_change_value() {
        let plain = f_exact(&SearchConfig::new(5, 2, 4)).unwrap();
        let seeded = f_exact(&seeded_config(5, 2, 4)).unwrap();
        assert!(seeded.seed_accepted);
        assert_eq!(plain.value, seeded.value);
        assert_eq!(plain.witnesses, seeded.witnesses);
    }

    #[test]
    fn invalid_seed_is_ignored() {
        let cube = Family::power_set(GroundSet::new(3).unwrap());
        let cert = f_exact(&SearchConfig::new(3, 1, 3).with_seed(cube)).unwrap();
        assert!(!cert.seed_accepted);
        assert_eq!(cert.value, 3);
    }

    #[test]
    fn caps() {
        assert!(matches!(f_exact(&SearchConfig::new(12, 2, 11)), Err(Error::Capacity(_))));
        let plain = SearchConfig::new(8, 2, 7).with_symmetry(false);
        assert!(matches!(f_exact(&plain), Err(Error::Capacity(_))));
    }

    #[test]
    fn zero_budget_gives_lower_bound() {
        let cfg = seeded_config(6, 2, 5).with_budget(0.0);
        let cert = f_exact(&cfg).unwrap();
        assert!(!cert.exhaustive);
        assert!(cert.value >= 20);
        let rep = conjecture_from_certificate(&cert);
        assert_eq!(rep.outcome, ConjectureOutcome::SearchLowerBoundOnly);
    }

    #[test]
    fn conjecture_small_points() {
        let r = verify_conjecture_point(4, 2, 3).unwrap();
        assert_eq!(r.outcome, ConjectureOutcome::Equal);
        let r = verify_conjecture_point(4, 3, 3).unwrap();
        assert_eq!(r.outcome, ConjectureOutcome::ValueDiffers);
        assert_eq!(r.value, 11);
        assert_eq!(r.witness.as_ref().map(Family::len), Some(11));
        let r = verify_conjecture_point(4, 2, 4).unwrap();
        assert_eq!(r.outcome, ConjectureOutcome::OutsideRegime);
    }

    #[test]
    fn uniqueness_at_four() {
        let r = verify_uniqueness(4, 2).unwrap();
        assert_eq!(r.value, 6);
        assert_eq!(r.matches, Some(true));
    }

    #[test]
    fn argument_orders() {
        let rows = argument_order_table(&[3, 4], None).unwrap();
        assert_eq!(rows[0].as_written, 8);
        assert_eq!(rows[0].swapped, 1);
        assert_eq!(rows[1].as_written, 16);
        assert_eq!(rows[1].swapped, 2);
    }
}
