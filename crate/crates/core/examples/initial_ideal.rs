//! The degree-two initial ideal of the spinor ideal: leading monomials of
//! the Wick span are exactly the incomparable pairs of Young's lattice.
//!
//! Run with `cargo run --release --example initial_ideal [n]`.

use coxspin::combinat::incomparable_pairs;
use coxspin::spinor::{initial_ideal_gens, leading_monomials_are_incomparable, spinor_oracle_spaces};
use std::collections::BTreeMap;

fn main() {
    let n: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(6);
    let pairs = incomparable_pairs(n).unwrap();
    let gens = initial_ideal_gens(n);
    let total: usize = gens.values().map(Vec::len).sum();
    println!(
        "n = {n}: {} incomparable pairs, {total} initial monomials in {} degrees",
        pairs.len(),
        gens.len()
    );
    println!(
        "leading monomials incomparable: {}",
        leading_monomials_are_incomparable(&gens)
    );

    let mut classes: BTreeMap<String, usize> = BTreeMap::new();
    for (d, ms) in &gens {
        *classes.entry(d.class().to_string()).or_default() += ms.len();
    }
    for (class, count) in &classes {
        println!("  {class}: {count}");
    }

    let oracle = spinor_oracle_spaces(n);
    let dim: usize = oracle.values().map(Vec::len).sum();
    println!("kernel of evaluation at generic Pfaffians: total dimension {dim}");
    if let Some((d, qs)) = oracle.iter().max_by_key(|(_, qs)| qs.len()) {
        println!("largest degree {d}:");
        for q in qs {
            println!("  {}", q.display());
        }
    }
}
