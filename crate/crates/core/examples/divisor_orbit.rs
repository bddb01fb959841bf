//! The Weyl orbit of `E_n` in the Picard lattice consists of the `2^{n-1}`
//! classes `D(B)`, matched with the half-spin weights.
//!
//! Run with `cargo run --release --example divisor_orbit`.

use coxspin::algebra::rational::{ratio, to_string};
use coxspin::combinat::even_subsets;
use coxspin::picard::{canonical, divisor_d, simple_roots, spin_weight, weight_to_pic, weyl_orbit, PicClass};

fn show(c: &PicClass) -> String {
    c.0.iter().map(to_string).collect::<Vec<_>>().join(" ")
}

fn main() {
    for n in 5..=8 {
        let orbit = weyl_orbit(&PicClass::e(n, n), &simple_roots(n), 1 << n).unwrap();
        let k4 = canonical(n).scale(&ratio(1, 4));
        let subsets = even_subsets(n).unwrap();
        let matches = subsets
            .iter()
            .all(|b| orbit.contains(&divisor_d(b)) && weight_to_pic(&spin_weight(b)) == &divisor_d(b) + &k4);
        println!(
            "n = {n}: orbit size {} (expected {}), D(B) and weights agree: {matches}",
            orbit.len(),
            1 << (n - 1)
        );
    }
    println!("n = 5 classes (H, E_1..E_5):");
    for b in even_subsets(5).unwrap() {
        let d = divisor_d(&b);
        println!(
            "  D({:>4}) = [{}]  D^2 = {}",
            b.label(),
            show(&d),
            d.self_intersection()
        );
    }
}
