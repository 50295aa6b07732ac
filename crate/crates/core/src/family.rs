//! Ground sets, subset bitmasks, set families and ground-set relabelings.
//!
//! A subset of `[n] = {1, .., n}` is an `n`-bit mask where bit `i - 1` is set
//! iff element `i` belongs to the subset. Families are stored as flat vectors of
//! masks kept in canonical storage order: ascending by `(popcount, value)`.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Largest supported ground set.
pub const MAX_N: usize = 20;

/// Largest ground set for which [`canonical_form`] enumerates all relabelings.
pub const CANONICAL_MAX_N: usize = 8;

/// The ground set `[n]`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundSet(u8);

impl GroundSet {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return invalid(format!("ground set size must be in 1..={MAX_N}, got {n}"));
        }
        Ok(GroundSet(n as u8))
    }

    #[inline]
    pub fn n(self) -> usize {
        self.0 as usize
    }

    /// The mask of `[n]` itself.
    #[inline]
    pub fn full(self) -> SubsetMask {
        SubsetMask((1u32 << self.0) - 1)
    }

    /// Number of subsets, `2^n`.
    #[inline]
    pub fn power_set_size(self) -> usize {
        1usize << self.0
    }

    #[inline]
    pub fn contains(self, set: SubsetMask) -> bool {
        set.0 >> self.0 == 0
    }

    /// All `size`-subsets of `[n]` in lexicographic order of their element lists.
    pub fn subsets_of_size(self, size: usize) -> impl Iterator<Item = SubsetMask> {
        (1..=self.n())
            .combinations(size)
            .map(SubsetMask::from_elements)
    }
}

/// One subset of `[n]`.
#[derive(Copy, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetMask(pub u32);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    /// Builds a mask from 1-based elements.
    ///
    /// Panics if an element is outside `1..=MAX_N`.
    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Self {
        let mut bits = 0u32;
        for e in elements {
            assert!((1..=MAX_N).contains(&e), "element {e} out of range");
            bits |= 1 << (e - 1);
        }
        SubsetMask(bits)
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    /// Cardinality of the subset.
    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, element: usize) -> bool {
        element >= 1 && element <= 32 && self.0 >> (element - 1) & 1 == 1
    }

    #[inline]
    pub fn is_subset_of(self, other: SubsetMask) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_proper_subset_of(self, other: SubsetMask) -> bool {
        self.is_subset_of(other) && self.0 != other.0
    }

    #[inline]
    pub fn intersect(self, other: SubsetMask) -> SubsetMask {
        SubsetMask(self.0 & other.0)
    }

    #[inline]
    pub fn union(self, other: SubsetMask) -> SubsetMask {
        SubsetMask(self.0 | other.0)
    }

    #[inline]
    pub fn difference(self, other: SubsetMask) -> SubsetMask {
        SubsetMask(self.0 & !other.0)
    }

    /// `F + e`
    #[inline]
    pub fn with(self, element: usize) -> SubsetMask {
        SubsetMask(self.0 | 1 << (element - 1))
    }

    /// `F - e`
    #[inline]
    pub fn without(self, element: usize) -> SubsetMask {
        SubsetMask(self.0 & !(1 << (element - 1)))
    }

    /// 1-based elements in ascending order.
    pub fn elements(self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let e = rest.trailing_zeros() as usize + 1;
            rest &= rest - 1;
            Some(e)
        })
    }

    /// Key of the canonical family storage order.
    #[inline]
    pub fn storage_key(self) -> (u32, u32) {
        (self.0.count_ones(), self.0)
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.iter().join(","))
    }
}

/// A permutation of `[n]`, stored as the image sequence `π1 π2 .. πn`.
///
/// Used two ways: as a relabeling (element `e` maps to `π_e`) and as a
/// maximal chain (the chain's `i`-th set is `{π1, .., πi}`).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 || n > MAX_N {
            return invalid(format!("permutation length must be in 1..={MAX_N}"));
        }
        let mut seen = 0u32;
        for &e in &images {
            if e == 0 || e > n || seen >> (e - 1) & 1 == 1 {
                return invalid(format!("{images:?} is not a bijection on 1..={n}"));
            }
            seen |= 1 << (e - 1);
        }
        Ok(Permutation {
            images: images.into_iter().map(|e| e as u8).collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n as u8).collect(),
        }
    }

    /// All permutations of `[n]` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        (1..=n as u8)
            .permutations(n)
            .map(|images| Permutation { images })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&e| e as usize).collect()
    }

    /// `π_i` for a 1-based position `i`.
    #[inline]
    pub fn at(&self, position: usize) -> usize {
        self.images[position - 1] as usize
    }

    /// `ind(x)`: the 1-based position of `element`.
    pub fn index_of(&self, element: usize) -> usize {
        self.images
            .iter()
            .position(|&e| e as usize == element)
            .map(|p| p + 1)
            .expect("element not in permutation")
    }

    /// Relabels a subset: every element `e` is replaced by `π_e`.
    pub fn apply(&self, set: SubsetMask) -> SubsetMask {
        let mut out = 0u32;
        for e in set.iter() {
            out |= 1 << (self.images[e - 1] - 1);
        }
        SubsetMask(out)
    }

    /// The sets `F_0 = ∅ ⊊ F_1 ⊊ .. ⊊ F_n = [n]` of the maximal chain this
    /// permutation encodes.
    pub fn prefix_sets(&self) -> Vec<SubsetMask> {
        let mut out = Vec::with_capacity(self.images.len() + 1);
        let mut acc = 0u32;
        out.push(SubsetMask(0));
        for &e in &self.images {
            acc |= 1 << (e - 1);
            out.push(SubsetMask(acc));
        }
        out
    }

    /// Whether `set` is a member of this permutation's maximal chain.
    pub fn chain_contains(&self, set: SubsetMask) -> bool {
        let mut acc = 0u32;
        for &e in &self.images[..set.len().min(self.images.len())] {
            acc |= 1 << (e - 1);
        }
        acc == set.0
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.images.iter().join(" "))
    }
}

/// A deduplicated family of subsets of `[n]` in canonical storage order.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FamilyJson", into = "FamilyJson")]
pub struct Family {
    ground: GroundSet,
    members: Vec<SubsetMask>,
}

impl Family {
    /// Builds a family, rejecting duplicates and sets outside `[n]`.
    pub fn new<I: IntoIterator<Item = SubsetMask>>(ground: GroundSet, members: I) -> Result<Self> {
        let mut members: Vec<SubsetMask> = members.into_iter().collect();
        if let Some(bad) = members.iter().find(|m| !ground.contains(**m)) {
            return invalid(format!("set {bad} is not a subset of [{}]", ground.n()));
        }
        members.sort_by_key(|m| m.storage_key());
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return invalid(format!("duplicate set {}", w[0]));
        }
        Ok(Family { ground, members })
    }

    /// Convenience constructor from element lists, e.g. `&[&[1, 2], &[2, 3]]`.
    pub fn from_sets(n: usize, sets: &[&[usize]]) -> Result<Self> {
        let ground = GroundSet::new(n)?;
        let mut masks = Vec::with_capacity(sets.len());
        for set in sets {
            if let Some(&e) = set.iter().find(|&&e| e == 0 || e > n) {
                return invalid(format!("element {e} outside [{n}]"));
            }
            masks.push(SubsetMask::from_elements(set.iter().copied()));
        }
        Family::new(ground, masks)
    }

    /// Sorts and deduplicates; callers guarantee every mask lies in `[n]`.
    pub(crate) fn from_masks_dedup(ground: GroundSet, mut members: Vec<SubsetMask>) -> Self {
        members.sort_by_key(|m| m.storage_key());
        members.dedup();
        Family { ground, members }
    }

    pub fn empty(ground: GroundSet) -> Self {
        Family {
            ground,
            members: Vec::new(),
        }
    }

    /// All of `2^[n]`.
    pub fn power_set(ground: GroundSet) -> Self {
        Self::layers(ground, 0, ground.n())
    }

    /// Every subset whose size lies in `lo..=hi`.
    pub fn layers(ground: GroundSet, lo: usize, hi: usize) -> Self {
        let members = (0..ground.power_set_size() as u32)
            .map(SubsetMask)
            .filter(|m| (lo..=hi).contains(&m.len()))
            .collect();
        Family::from_masks_dedup(ground, members)
    }

    #[inline]
    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.ground.n()
    }

    #[inline]
    pub fn members(&self) -> &[SubsetMask] {
        &self.members
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, set: SubsetMask) -> bool {
        self.members
            .binary_search_by_key(&set.storage_key(), |m| m.storage_key())
            .is_ok()
    }

    /// Storage index of `set`, if present.
    pub fn index_of(&self, set: SubsetMask) -> Option<usize> {
        self.members
            .binary_search_by_key(&set.storage_key(), |m| m.storage_key())
            .ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = SubsetMask> + '_ {
        self.members.iter().copied()
    }

    /// Image of the family under a ground-set relabeling.
    pub fn relabel(&self, perm: &Permutation) -> Family {
        assert_eq!(perm.n(), self.n(), "relabeling over a different ground set");
        Family::from_masks_dedup(self.ground, self.members.iter().map(|&m| perm.apply(m)).collect())
    }

    /// The family with the member at storage index `idx` removed.
    pub fn without_index(&self, idx: usize) -> Family {
        let mut members = self.members.clone();
        members.remove(idx);
        Family {
            ground: self.ground,
            members,
        }
    }

    /// The family with `set` added (no-op if already present).
    pub fn with_set(&self, set: SubsetMask) -> Result<Family> {
        if !self.ground.contains(set) {
            return invalid(format!("set {set} is not a subset of [{}]", self.n()));
        }
        let mut members = self.members.clone();
        members.push(set);
        Ok(Family::from_masks_dedup(self.ground, members))
    }

    /// Sizes of the smallest and largest member.
    pub fn size_range(&self) -> Option<(usize, usize)> {
        let lo = self.members.iter().map(|m| m.len()).min()?;
        let hi = self.members.iter().map(|m| m.len()).max()?;
        Some((lo, hi))
    }

    /// Every distinct relabeling of this family, sorted.
    pub fn orbit(&self) -> Result<Vec<Family>> {
        if self.n() > CANONICAL_MAX_N {
            return Err(Error::Capacity(format!(
                "orbit enumeration needs n <= {CANONICAL_MAX_N}, got {}",
                self.n()
            )));
        }
        let orbit: BTreeSet<Vec<u32>> = Permutation::all(self.n())
            .map(|p| sorted_bits(self.members.iter().map(|&m| p.apply(m))))
            .collect();
        Ok(orbit
            .into_iter()
            .map(|bits| Family {
                ground: self.ground,
                members: bits.into_iter().map(SubsetMask).collect(),
            })
            .collect())
    }
}

fn sorted_bits(masks: impl Iterator<Item = SubsetMask>) -> Vec<u32> {
    let mut v: Vec<SubsetMask> = masks.collect();
    v.sort_by_key(|m| m.storage_key());
    v.into_iter().map(|m| m.0).collect()
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} {{{}}}", self.n(), self.members.iter().join(", "))
    }
}

impl PartialOrd for Family {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Families over the same ground set compare lexicographically by their
/// storage-ordered member masks.
impl Ord for Family {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.ground.cmp(&other.ground).then_with(|| {
            let a = self.members.iter().map(|m| m.storage_key());
            let b = other.members.iter().map(|m| m.storage_key());
            a.cmp(b)
        })
    }
}

/// Interchange form: `{"n": 4, "sets": [[1, 2], [1, 3]]}` with sets sorted by
/// size, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyJson {
    pub n: usize,
    pub sets: Vec<Vec<usize>>,
}

impl From<Family> for FamilyJson {
    fn from(fam: Family) -> Self {
        FamilyJson::from(&fam)
    }
}

impl From<&Family> for FamilyJson {
    fn from(fam: &Family) -> Self {
        let mut sets: Vec<Vec<usize>> = fam.members.iter().map(|m| m.elements()).collect();
        sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        FamilyJson { n: fam.n(), sets }
    }
}

impl TryFrom<FamilyJson> for Family {
    type Error = Error;

    fn try_from(json: FamilyJson) -> Result<Self> {
        let ground = GroundSet::new(json.n).map_err(|e| Error::Parse(e.to_string()))?;
        let mut masks = Vec::with_capacity(json.sets.len());
        for set in &json.sets {
            let mut bits = 0u32;
            for &e in set {
                if e == 0 || e > json.n {
                    return Err(Error::Parse(format!("element {e} outside [{}]", json.n)));
                }
                if bits >> (e - 1) & 1 == 1 {
                    return Err(Error::Parse(format!("element {e} repeated in set {set:?}")));
                }
                bits |= 1 << (e - 1);
            }
            masks.push(SubsetMask(bits));
        }
        Family::new(ground, masks).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl Family {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&FamilyJson::from(self)).expect("family serializes")
    }

    pub fn from_json(text: &str) -> Result<Family> {
        let json: FamilyJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Family::try_from(json)
    }
}

/// `F|_L = F ∩ L`.
#[inline]
pub fn trace_set(set: SubsetMask, on: SubsetMask) -> SubsetMask {
    set.intersect(on)
}

/// `𝓕|_L`, deduplicated. The ground set stays `[n]`.
pub fn trace_family(fam: &Family, on: SubsetMask) -> Family {
    Family::from_masks_dedup(
        fam.ground,
        fam.members.iter().map(|&m| trace_set(m, on)).collect(),
    )
}

/// `{ [n] ∖ F : F ∈ 𝓕 }`.
pub fn complement_family(fam: &Family) -> Family {
    let full = fam.ground.full();
    Family::from_masks_dedup(
        fam.ground,
        fam.members.iter().map(|&m| full.difference(m)).collect(),
    )
}

/// Least relabeling of `fam` in family order.
///
/// Exhaustive over all `n!` relabelings; refuses `n > CANONICAL_MAX_N`.
pub fn canonical_form(fam: &Family) -> Result<Family> {
    let n = fam.n();
    if n > CANONICAL_MAX_N {
        return Err(Error::Capacity(format!(
            "canonical form needs n <= {CANONICAL_MAX_N}, got {n}"
        )));
    }
    let mut best: Option<Vec<SubsetMask>> = None;
    let mut image = Vec::with_capacity(fam.len());
    for perm in Permutation::all(n) {
        image.clear();
        image.extend(fam.members.iter().map(|&m| perm.apply(m)));
        image.sort_unstable_by_key(|m| m.storage_key());
        let better = match &best {
            None => true,
            Some(b) => image
                .iter()
                .map(|m| m.storage_key())
                .lt(b.iter().map(|m| m.storage_key())),
        };
        if better {
            best = Some(image.clone());
        }
    }
    Ok(Family {
        ground: fam.ground,
        members: best.unwrap_or_default(),
    })
}
