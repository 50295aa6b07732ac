//! Maximal-chain census with both engines, and the c⁺ product formula.
//!
//! cargo run --release --example census

use trace_sperner::census::{c_plus_formula, census_direct, census_ie};
use trace_sperner::sample::{pruned_trace_sperner, rng};
use trace_sperner::{build_g0, Family, GroundSet};

fn main() -> trace_sperner::Result<()> {
    let middle = Family::layers(GroundSet::new(4)?, 2, 2);
    let c = census_direct(&middle, 2)?;
    println!("middle layer of [4], k=2: counts {:?}, (c-, c, c+) = ({}, {}, {})", c.counts, c.c_minus, c.c, c.c_plus);

    let g0 = build_g0(8, 3, 1)?;
    let d = census_direct(&g0, 3)?;
    let ie = census_ie(&g0, 3)?;
    println!("\nG0(8,3,1): {} members", g0.len());
    println!("  direct: {:?}", d.counts);
    println!("  ie:     {:?}", ie.counts);
    println!("  engines agree: {}", d == ie);
    println!("  c+ = {}, formula = {}", d.c_plus, c_plus_formula(&g0, 3));

    // Past the direct engine's range, only inclusion-exclusion runs.
    let big = build_g0(14, 3, 1)?;
    let c = census_ie(&big, 3)?;
    println!("\nG0(14,3,1): {} members, counts {:?}", big.len(), c.counts);

    let mut r = rng(42);
    println!("\nrandom 6-trace 3-Sperner families over [7]:");
    for _ in 0..5 {
        let f = pruned_trace_sperner(&mut r, 7, 3, 6, 1, 6, 0.3)?;
        let c = census_ie(&f, 3)?;
        println!(
            "  |F| = {:>3}  c- = {:>4}  c = {:>4}  c+ = {:>4}  formula = {:>4}  beyond k = {}",
            f.len(),
            c.c_minus,
            c.c,
            c.c_plus,
            c_plus_formula(&f, 3),
            c.beyond_k()
        );
    }
    Ok(())
}
