//! The layered constructions and the binomial machinery behind their sizes.
//!
//! cargo run --example constructions

use trace_sperner::{
    build_erdos_extremal, build_g0, build_g0_prime, is_l_trace_k_sperner, sigma, BinomialTable,
    ErdosVariant,
};

fn main() -> trace_sperner::Result<()> {
    let row = BinomialTable::new(6);
    println!("binomials of order 6: {:?}", row.row().iter().map(|b| b.to_string()).collect::<Vec<_>>());
    for m in 0..=7 {
        println!("  sigma(6, {m}) = {}", sigma(6, m)?);
    }

    println!("\n n k l  |G0|  sigma(n,k-l)  (n-l)-trace k-Sperner   G0'");
    for n in 4..=7 {
        for k in 2..=3 {
            for l in 1..k {
                let g0 = build_g0(n, k, l)?;
                let ok = is_l_trace_k_sperner(&g0, n - l, k)?.holds;
                let prime = match build_g0_prime(n, k, l) {
                    Ok(p) => format!("{} sets", p.len()),
                    Err(_) => "undefined (odd)".to_string(),
                };
                println!(
                    " {n} {k} {l}  {:>4}  {:>12}  {:>21}   {prime}",
                    g0.len(),
                    sigma(n, k - l)?,
                    ok
                );
            }
        }
    }

    let erdos = build_erdos_extremal(4, 2, ErdosVariant::Upper)?;
    println!("\nErdős band for n=4, k=2: {} sets, {}", erdos.len(), erdos.to_json());
    match build_erdos_extremal(5, 2, ErdosVariant::Lower) {
        Ok(f) => println!("lower band for n=5, k=2: {}", f.len()),
        Err(e) => println!("lower band for n=5, k=2: {e}"),
    }
    Ok(())
}
