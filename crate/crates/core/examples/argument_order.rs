//! Both readings of f(n, n-1, 1): as written (1-element traces, (n-1)-Sperner)
//! and swapped ((n-1)-element traces, 1-Sperner).
//!
//! cargo run --release --example argument_order

use trace_sperner::search::argument_order_table;

fn main() -> trace_sperner::Result<()> {
    println!(" n  f(n,n-1,1)  f(n,1,n-1)  sigma(n,1)");
    for row in argument_order_table(&[2, 3, 4, 5, 6, 7], Some(60.0))? {
        println!(
            "{:>2}  {:>10}  {:>10}  {:>10}{}",
            row.n,
            row.as_written,
            row.swapped,
            row.middle_layer,
            if row.swapped_exhaustive { "" } else { "  (lower bound)" }
        );
    }
    Ok(())
}
