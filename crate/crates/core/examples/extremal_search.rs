//! Exact f(n, k, l) at small n, the comparison with Σ(n, k - (n - l)) and the
//! literal extremal families at trace size n - 1.
//!
//! cargo run --release --example extremal_search [n_max]

use trace_sperner::search::{
    conjecture_from_certificate, f_exact, seeded_config, uniqueness_from_certificate,
};

fn main() -> trace_sperner::Result<()> {
    let n_max: usize = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(5);

    println!("{:>2} {:>2} {:>2} {:>6} {:>8} {:>10} {:>8}  outcome", "n", "k", "l", "f", "sigma", "nodes", "ms");
    for n in 2..=n_max {
        for k in 2..=3.min(n) {
            let l = n - 1;
            let cert = f_exact(&seeded_config(n, k, l))?;
            let rep = conjecture_from_certificate(&cert);
            println!(
                "{:>2} {:>2} {:>2} {:>6} {:>8} {:>10} {:>8}  {:?}",
                n,
                k,
                l,
                cert.value,
                rep.sigma.as_deref().unwrap_or("-"),
                cert.node_count,
                cert.elapsed_ms,
                rep.outcome
            );
            if n <= 6 {
                let u = uniqueness_from_certificate(&cert)?;
                println!(
                    "      extremal families: {} literal, {} up to relabeling; matches G0 set: {:?}",
                    u.actual.len(),
                    cert.witnesses.len(),
                    u.matches
                );
            }
        }
    }
    Ok(())
}
