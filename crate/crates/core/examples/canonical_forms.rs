//! Relabeling, canonical forms, orbits and complements.
//!
//! cargo run --example canonical_forms

use trace_sperner::{canonical_form, complement_family, Family, Permutation};

fn main() -> trace_sperner::Result<()> {
    let fam = Family::from_sets(4, &[&[2, 4], &[3], &[1, 3, 4]])?;
    let perm = Permutation::new(vec![3, 1, 4, 2])?;
    println!("family:     {}", fam.to_json());
    println!("relabeled:  {}", fam.relabel(&perm).to_json());
    println!("canonical:  {}", canonical_form(&fam)?.to_json());
    println!("same class: {}", canonical_form(&fam.relabel(&perm))? == canonical_form(&fam)?);
    println!("orbit size: {}", fam.orbit()?.len());
    println!("complement: {}", complement_family(&fam).to_json());
    Ok(())
}
