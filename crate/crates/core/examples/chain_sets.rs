//! Chain sets of k-chains: filtered membership against the product formulas.
//!
//! cargo run --release --example chain_sets

use trace_sperner::census::{
    aggregate_chain_set_size, chain_set, chain_set_parts, chain_set_type2, part_size,
    starred_chain_set, starred_chain_set_size, KChain,
};

fn show(ch: &KChain) -> trace_sperner::Result<()> {
    let sets: Vec<String> = ch.sets().iter().map(|s| s.to_string()).collect();
    println!("{} over [{}], {:?}", sets.join(" < "), ch.n(), ch.kind());
    println!("  parts: {}, each of size {}", chain_set_parts(ch).len(), part_size(ch));
    println!(
        "  chain set: filtered {} / formula {}",
        chain_set(ch)?.len(),
        aggregate_chain_set_size(ch)
    );
    println!(
        "  starred:   filtered {} / formula {}",
        starred_chain_set(ch)?.len(),
        starred_chain_set_size(ch)
    );
    Ok(())
}

fn main() -> trace_sperner::Result<()> {
    show(&KChain::from_elements(5, &[&[1, 2], &[1, 2, 3]])?)?;
    show(&KChain::from_elements(6, &[&[1, 2, 3], &[1, 2, 3, 4]])?)?;
    show(&KChain::from_elements(7, &[&[1, 2, 3, 4], &[1, 2, 3, 4, 5], &[1, 2, 3, 4, 5, 6]])?)?;

    let wide = KChain::from_elements(5, &[&[1, 2], &[1, 2, 3, 4]])?;
    show(&wide)?;
    for p in chain_set_type2(1, 5, &[3, 4], &wide)? {
        let prefix: Vec<String> = p.prefix_sets().iter().map(|s| s.to_string()).collect();
        println!("  (x=1, z=5, σ=(3,4)) contains {}", prefix.join(" < "));
    }
    Ok(())
}
