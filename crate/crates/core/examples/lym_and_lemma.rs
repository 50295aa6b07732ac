//! The claims on chain sets, overlap multiplicities, c⁻ >= c⁺ and the LYM
//! bound on sampled (n-1)-trace k-Sperner families.
//!
//! cargo run --release --example lym_and_lemma

use trace_sperner::census::{s_star, verify_claims, verify_corollary_26, verify_lemma_21};
use trace_sperner::sample::{greedy_trace_sperner, rng};
use trace_sperner::build_g0;

fn main() -> trace_sperner::Result<()> {
    let g0 = build_g0(7, 3, 1)?;
    let claims = verify_claims(&g0, 3)?;
    println!(
        "G0(7,3,1): claims hold = {} over {} memberships (max meet {:?})",
        claims.holds, claims.memberships, claims.max_meet
    );
    let s = s_star(&g0, 3)?;
    println!(
        "  s*: max type I = {}, max type II = {}, c- = {} >= {} : {}",
        s.max_type1, s.max_type2, s.c_minus, s.overlap_bound, s.c_minus_dominates
    );

    let mut r = rng(7);
    println!("\ngreedy 6-trace 3-Sperner families over [7], sizes 1..=6:");
    for _ in 0..3 {
        let f = greedy_trace_sperner(&mut r, 7, 3, 6, 1, 6)?;
        let claims = verify_claims(&f, 3)?;
        let s = s_star(&f, 3)?;
        println!(
            "  |F| = {:>3}  type I / II chains = {} / {}  claims hold: {}  max s* I/II = {}/{}  c- = {} >= {}: {}",
            f.len(),
            claims.type1_chains,
            claims.type2_chains + claims.type2_l1_chains,
            claims.holds,
            s.max_type1,
            s.max_type2,
            s.c_minus,
            s.overlap_bound,
            s.c_minus_dominates
        );
    }

    let boundary = verify_corollary_26(&build_g0(12, 3, 1)?, 3)?;
    println!("\nG0(12,3,1): LYM sum = {} (k - 1 = 2), holds = {}", boundary.sum, boundary.holds);

    let mut r = rng(2024);
    println!("\ngreedy 8-trace 3-Sperner families over [9], sizes 4..=8:");
    for _ in 0..4 {
        let f = greedy_trace_sperner(&mut r, 9, 3, 8, 4, 8)?;
        let lemma = verify_lemma_21(&f, 3)?;
        let cor = verify_corollary_26(&f, 3)?;
        println!(
            "  |F| = {:>3}  c- = {:>6}  c+ = {:>6}  c- >= c+: {}  strict hyp: {}  LYM = {} <= 2: {}",
            f.len(),
            lemma.c_minus,
            lemma.c_plus,
            lemma.holds,
            lemma.strict_hypothesis,
            cor.sum,
            cor.holds
        );
    }
    Ok(())
}
