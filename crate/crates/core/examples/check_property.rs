//! Deciding the l-trace k-Sperner property and reading a violation witness.
//!
//! cargo run --example check_property

use trace_sperner::{
    is_k_sperner, is_l_trace_k_sperner, longest_chain, Family, GroundSet,
};

fn main() -> trace_sperner::Result<()> {
    // All 2-subsets of [4]: an antichain, and 3-trace 2-Sperner.
    let middle = Family::layers(GroundSet::new(4)?, 2, 2);
    println!("middle layer of [4]: {}", middle.to_json());
    println!("  longest chain: {}", longest_chain(&middle).length);
    println!("  1-Sperner: {}", is_k_sperner(&middle, 1));
    println!("  3-trace 2-Sperner: {}", is_l_trace_k_sperner(&middle, 3, 2)?.holds);

    // Adding {1} and {1,2,3} creates nested traces.
    let grown = Family::from_sets(4, &[&[1], &[1, 2], &[1, 2, 3], &[3, 4]])?;
    let out = is_l_trace_k_sperner(&grown, 3, 2)?;
    println!("\n{}: 3-trace 2-Sperner = {}", grown.to_json(), out.holds);
    if let Some(w) = out.violation {
        println!("  witness: {}", serde_json::to_string(&w).expect("json"));
        println!("  strictly nested after tracing: {}", w.is_strictly_nested());
    }

    // Families parse from the interchange format in any order.
    let parsed = Family::from_json(r#"{"n": 3, "sets": [[2, 3], [1], []]}"#)?;
    println!("\nparsed and re-sorted: {}", parsed.to_json());
    match Family::from_json(r#"{"n": 3, "sets": [[1], [1]]}"#) {
        Ok(_) => unreachable!(),
        Err(e) => println!("duplicate sets rejected: {e}"),
    }
    Ok(())
}
