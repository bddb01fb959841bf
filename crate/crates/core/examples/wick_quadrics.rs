//! Wick quadrics vanish on the Cox generators, and so do their torus
//! translates by the scaling vector `a(c)`.
//!
//! Run with `cargo run --release --example wick_quadrics`.

use coxspin::config::{sample_generic, scaling_vector};
use coxspin::spinor::{all_wick_quadrics, wick_quadric};
use coxspin::verify::check_inclusion;

fn main() {
    let q = wick_quadric(6, &[1, 3, 4, 5, 6], &[2]).unwrap();
    println!("sigma = 13456, tau = 2:\n  {}", q.display());
    println!("leading monomial {}", q.leading_monomial().unwrap());

    for n in [5, 6] {
        let quadrics = all_wick_quadrics(n);
        let s = sample_generic(n, 42, 1000).unwrap();
        let a = scaling_vector(&s.c, &s.y, &s.p).unwrap();
        let ok = check_inclusion(&s.p, &s.y, &s.c).unwrap();
        println!(
            "n = {n}: {} distinct Wick quadrics, a(c) has {} entries, vanishing: {ok}",
            quadrics.len(),
            a.entries.len()
        );
    }
}
