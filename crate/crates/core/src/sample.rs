//! Seeded random families for sampled verification runs.
//!
//! All samplers take an explicit seed and use ChaCha, so a seed reproduces
//! the same family on every platform and thread count.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Result};
use crate::family::{Family, GroundSet, SubsetMask};
use crate::sperner::is_l_trace_k_sperner;

/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0x5eed;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn band(ground: GroundSet, lo: usize, hi: usize) -> Result<Vec<SubsetMask>> {
    let n = ground.n();
    if lo > hi || hi > n {
        return invalid(format!("size band {lo}..={hi} is not inside 0..={n}"));
    }
    Ok((lo..=hi).flat_map(|s| ground.subsets_of_size(s)).collect())
}

/// Each set with size in `lo..=hi` is kept independently with probability
/// `density`.
pub fn random_family<R: Rng>(
    rng: &mut R,
    n: usize,
    lo: usize,
    hi: usize,
    density: f64,
) -> Result<Family> {
    let ground = GroundSet::new(n)?;
    let pool = band(ground, lo, hi)?;
    Family::new(ground, pool.into_iter().filter(|_| rng.gen_bool(density)))
}

/// Starts from [`random_family`] and, while some `l`-trace carries a
/// `(k+1)`-chain, deletes a random member of the reported witness. The
/// result is `l`-trace k-Sperner.
pub fn pruned_trace_sperner<R: Rng>(
    rng: &mut R,
    n: usize,
    k: usize,
    l: usize,
    lo: usize,
    hi: usize,
    density: f64,
) -> Result<Family> {
    let mut fam = random_family(rng, n, lo, hi, density)?;
    loop {
        let out = is_l_trace_k_sperner(&fam, l, k)?;
        let Some(v) = out.violation else {
            return Ok(fam);
        };
        let victim = *v.sets.choose(rng).expect("witness is nonempty");
        let idx = fam.index_of(victim).expect("witness sets are members");
        fam = fam.without_index(idx);
    }
}

/// Visits the sets with size in `lo..=hi` in random order and keeps each one
/// whose addition preserves the `l`-trace k-Sperner property. The result is
/// maximal within the band.
pub fn greedy_trace_sperner<R: Rng>(
    rng: &mut R,
    n: usize,
    k: usize,
    l: usize,
    lo: usize,
    hi: usize,
) -> Result<Family> {
    let ground = GroundSet::new(n)?;
    let mut pool = band(ground, lo, hi)?;
    pool.shuffle(rng);
    let mut fam = Family::empty(ground);
    for set in pool {
        let next = fam.with_set(set)?;
        if is_l_trace_k_sperner(&next, l, k)?.holds {
            fam = next;
        }
    }
    Ok(fam)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_samples_repeat() {
        let a = random_family(&mut rng(7), 6, 1, 5, 0.4).unwrap();
        let b = random_family(&mut rng(7), 6, 1, 5, 0.4).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|m| (1..=5).contains(&m.len())));
    }

    #[test]
    fn pruned_and_greedy_satisfy_property() {
        let mut r = rng(11);
        for _ in 0..10 {
            let f = pruned_trace_sperner(&mut r, 6, 2, 5, 0, 6, 0.3).unwrap();
            assert!(is_l_trace_k_sperner(&f, 5, 2).unwrap().holds);
        }
        let g = greedy_trace_sperner(&mut r, 7, 3, 6, 4, 6).unwrap();
        assert!(is_l_trace_k_sperner(&g, 6, 3).unwrap().holds);
        assert!(!g.is_empty());
    }

    #[test]
    fn bad_band_rejected() {
        assert!(random_family(&mut rng(0), 4, 3, 2, 0.5).is_err());
        assert!(random_family(&mut rng(0), 4, 0, 5, 0.5).is_err());
    }
}
