//! Orbit representatives for the first two branching levels.
//!
//! Relabelings preserve set sizes, so every `S_n`-orbit of a subset is a full
//! layer and `{1..p}` has the least value in its layer. Fixing `c0 = {1..p}`
//! leaves `S_p × S_{n-p}`, whose orbits on a layer are indexed by
//! `|c ∩ c0|`; the least value in each is `{1..a} ∪ {p+1..p+b}`.

use crate::family::{Permutation, SubsetMask};

/// `{1..p}` as a raw mask.
#[inline]
pub fn root_representative(p: usize) -> u32 {
    (1u32 << p) - 1
}

/// Least-valued image of `c` under the relabelings fixing `{1..p}` setwise.
#[inline]
pub fn stabilizer_representative(p: usize, c: u32) -> u32 {
    let c0 = root_representative(p);
    let a = (c & c0).count_ones() as usize;
    let b = (c & !c0).count_ones() as usize;
    root_representative(a) | (root_representative(b) << p)
}

/// Brute-force counterpart: the least `π(c)` over every `π ∈ S_n` with
/// `π(f) = f` for each `f` in `fixed`.
pub fn orbit_minimum(n: usize, fixed: &[u32], c: u32) -> u32 {
    Permutation::all(n)
        .filter(|p| fixed.iter().all(|&f| p.apply(SubsetMask(f)).bits() == f))
        .map(|p| p.apply(SubsetMask(c)).bits())
        .min()
        .expect("identity fixes everything")
}
