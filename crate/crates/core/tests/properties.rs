use proptest::prelude::*;

use trace_sperner::census::{census_direct, census_ie};
use trace_sperner::search::{f_exact, SearchConfig};
use trace_sperner::{
    canonical_form, complement_family, is_k_sperner, is_l_trace_k_sperner, longest_chain,
    lym_sum, trace_family, Family, GroundSet, Permutation, SubsetMask,
};

fn family_from_bits(n: usize, pick: u64) -> Family {
    let ground = GroundSet::new(n).unwrap();
    Family::new(
        ground,
        (0..1u32 << n).filter(|&m| pick >> m & 1 == 1).map(SubsetMask),
    )
    .unwrap()
}

fn arb_family(max_n: usize) -> impl Strategy<Value = Family> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::btree_set(0u32..1 << n, 0..=(1usize << n).min(40))
            .prop_map(move |sets| Family::new(GroundSet::new(n).unwrap(), sets.into_iter().map(SubsetMask)).unwrap())
    })
}

fn arb_family_and_perm(max_n: usize) -> impl Strategy<Value = (Family, Permutation)> {
    (1..=max_n).prop_flat_map(|n| {
        let fam = proptest::collection::btree_set(0u32..1 << n, 0..=(1usize << n).min(24))
            .prop_map(move |s| Family::new(GroundSet::new(n).unwrap(), s.into_iter().map(SubsetMask)).unwrap());
        let perm = Just((1..=n).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::new(v).unwrap());
        (fam, perm)
    })
}

fn is_storage_sorted(fam: &Family) -> bool {
    fam.members()
        .windows(2)
        .all(|w| (w[0].len(), w[0].bits()) < (w[1].len(), w[1].bits()))
}

fn is_antichain(fam: &Family) -> bool {
    longest_chain(fam).length <= 1
}

#[test]
fn trace_idempotent_exhaustive_small() {
    for n in 1..=3 {
        for pick in 0u64..1 << (1 << n) {
            let fam = family_from_bits(n, pick);
            for l in 0..1u32 << n {
                let once = trace_family(&fam, SubsetMask(l));
                assert_eq!(trace_family(&once, SubsetMask(l)), once);
                assert!(once.len() <= fam.len());
                assert!(is_storage_sorted(&once));
            }
        }
    }
}

/// Valid families at n = 4 are closed under removing a member.
#[test]
fn heredity_exhaustive_n4() {
    for (l, k) in [(3, 1), (3, 2), (2, 1), (4, 2)] {
        let valid: Vec<bool> = (0u64..1 << 16)
            .map(|pick| is_l_trace_k_sperner(&family_from_bits(4, pick), l, k).unwrap().holds)
            .collect();
        for pick in 0..1usize << 16 {
            if valid[pick] {
                for m in 0..16 {
                    assert!(valid[pick & !(1 << m)], "l={l} k={k} pick={pick:#x} m={m}");
                }
            }
        }
    }
}

/// Antichains pass the (n-1)-trace 2-Sperner test, and their LYM sum is at
/// most 1.
#[test]
fn antichains_exhaustive_small() {
    let one = num::BigRational::from_integer(1.into());
    for n in 2..=4 {
        let mut count = 0;
        for pick in 0u64..1 << (1 << n) {
            let fam = family_from_bits(n, pick);
            if !is_antichain(&fam) {
                continue;
            }
            count += 1;
            assert!(is_l_trace_k_sperner(&fam, n - 1, 2).unwrap().holds, "{fam:?}");
            assert!(lym_sum(&fam) <= one);
        }
        // Dedekind numbers count antichains, including the empty one.
        assert_eq!(count, [0, 0, 6, 20, 168][n]);
    }
}

#[test]
fn f_is_nondecreasing_in_k() {
    for n in 1..=4 {
        for l in 0..=n {
            let values: Vec<usize> = (1..=5)
                .map(|k| f_exact(&SearchConfig::new(n, k, l)).unwrap().value)
                .collect();
            assert!(values.windows(2).all(|w| w[0] <= w[1]), "n={n} l={l}: {values:?}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn canonical_form_is_a_class_function((fam, perm) in arb_family_and_perm(6)) {
        let relabeled = fam.relabel(&perm);
        prop_assert!(is_storage_sorted(&relabeled));
        prop_assert_eq!(canonical_form(&relabeled).unwrap(), canonical_form(&fam).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn trace_idempotent(fam in arb_family(9), l in any::<u32>()) {
        let on = SubsetMask(l & fam.ground().full().bits());
        let once = trace_family(&fam, on);
        prop_assert_eq!(trace_family(&once, on), once.clone());
        prop_assert!(once.iter().all(|m| m.is_subset_of(on)));
    }

    #[test]
    fn complement_is_involution(fam in arb_family(10)) {
        let c = complement_family(&fam);
        prop_assert!(is_storage_sorted(&c));
        prop_assert_eq!(c.len(), fam.len());
        prop_assert_eq!(complement_family(&c), fam);
    }

    #[test]
    fn full_trace_is_plain_sperner(fam in arb_family(7), k in 1usize..5) {
        prop_assert_eq!(is_l_trace_k_sperner(&fam, fam.n(), k).unwrap().holds, is_k_sperner(&fam, k));
    }

    #[test]
    fn witness_replays(fam in arb_family(7), k in 1usize..4, l_off in 0usize..3) {
        let l = fam.n().saturating_sub(l_off);
        let out = is_l_trace_k_sperner(&fam, l, k).unwrap();
        if let Some(w) = out.violation {
            prop_assert!(!out.holds);
            prop_assert_eq!(w.len(), k + 1);
            prop_assert!(w.is_strictly_nested());
            let on = w.trace_on.unwrap();
            prop_assert_eq!(on.len(), l);
            prop_assert!(w.sets.iter().all(|s| fam.contains(*s)));
            let traced = trace_family(&fam, on);
            prop_assert!(w.nested_sets().iter().all(|t| traced.contains(*t)));
        } else {
            prop_assert!(out.holds);
        }
    }

    #[test]
    fn heredity_random(fam in arb_family(7), k in 1usize..4, drop in any::<prop::sample::Index>()) {
        let l = fam.n().saturating_sub(1);
        if !fam.is_empty() && is_l_trace_k_sperner(&fam, l, k).unwrap().holds {
            let smaller = fam.without_index(drop.index(fam.len()));
            prop_assert!(is_l_trace_k_sperner(&smaller, l, k).unwrap().holds);
        }
    }

    #[test]
    fn antichains_random(n in 2usize..=8, size in any::<prop::sample::Index>(), picks in proptest::collection::vec(any::<prop::sample::Index>(), 0..30)) {
        // Random antichain: sets of one size, plus a greedy pass over other sizes.
        let ground = GroundSet::new(n).unwrap();
        let s = size.index(n + 1);
        let layer: Vec<SubsetMask> = ground.subsets_of_size(s).collect();
        let mut fam = Family::empty(ground);
        for p in &picks {
            let cand = layer[p.index(layer.len())];
            let grown = fam.with_set(cand).unwrap();
            if is_antichain(&grown) { fam = grown; }
        }
        for p in &picks {
            let cand = SubsetMask(p.index(1 << n) as u32);
            let grown = fam.with_set(cand).unwrap();
            if is_antichain(&grown) { fam = grown; }
        }
        prop_assert!(is_antichain(&fam));
        prop_assert!(is_l_trace_k_sperner(&fam, n - 1, 2).unwrap().holds);
        prop_assert!(lym_sum(&fam) <= num::BigRational::from_integer(1.into()));
    }

    #[test]
    fn census_engines_agree(fam in arb_family(7), k in 1usize..4) {
        let d = census_direct(&fam, k).unwrap();
        let ie = census_ie(&fam, k).unwrap();
        prop_assert_eq!(d.total(), (1..=fam.n() as u64).product::<u64>());
        prop_assert_eq!(d, ie);
    }
}
