//! Exact computation and verification for trace-Sperner set families.
//!
//! A family `𝓕 ⊆ 2^[n]` is *l-trace k-Sperner* when, for every `l`-subset
//! `L ⊆ [n]`, the trace `{F ∩ L : F ∈ 𝓕}` contains no chain of `k + 1` sets.
//! This crate decides that property with violation witnesses, builds the
//! layered extremal constructions, counts maximal chains by how many members
//! they meet, checks the chain-set machinery behind the LYM-type bound, and
//! computes the extremal size `f(n, k, l)` exactly for small `n`.
//!
//! See the `examples/` directory for one runnable program per capability.

pub mod census;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod family;
pub mod report;
pub mod sample;
pub mod search;
pub mod sperner;

pub use constructions::{
    binomial, build_erdos_extremal, build_g0, build_g0_prime, pairwise_size_gap_below, sigma,
    BinomialTable, ErdosVariant,
};
pub use error::{Error, Result};
pub use family::{
    canonical_form, complement_family, trace_family, trace_set, Family, FamilyJson, GroundSet,
    Permutation, SubsetMask,
};
pub use sperner::{
    is_k_sperner, is_l_trace_k_sperner, longest_chain, lym_sum, ChainWitness, LongestChain,
    TraceSpernerOutcome,
};
