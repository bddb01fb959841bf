//! Okada's identity: the sub-Pfaffian `F_B` of the cross-ratio matrix `A`
//! factors as `Psi_B(x, p) Psi_B(y, p) / prod p_ij`.
//!
//! Run with `cargo run --release --example okada_identity`.

use coxspin::algebra::Vars;
use coxspin::combinat::even_subsets;
use coxspin::config::{check_okada, pfaffian_generator, psi_symbolic, sample_generic, OkadaMode};
use std::time::Instant;

fn main() {
    let n = 6;
    let start = Instant::now();
    let mut checked = 0;
    for b in even_subsets(n).unwrap().into_iter().filter(|b| !b.is_empty()) {
        assert!(
            check_okada(&b, &OkadaMode::Symbolic),
            "identity fails for {}",
            b.label()
        );
        checked += 1;
    }
    println!(
        "n = {n}: identity holds symbolically for {checked} subsets ({:.2?})",
        start.elapsed()
    );

    // one generator written out at a sampled point
    let s = sample_generic(5, 1, 1000).unwrap();
    let vars = Vars::new(5);
    let b = coxspin::combinat::EvenSubset::new(5, &[1, 2, 3, 4]).unwrap();
    let f = pfaffian_generator(&b, &vars, &s.y, &s.p).unwrap();
    let psi = psi_symbolic(&b, &vars, &s.p).unwrap();
    println!(
        "configuration q = {:?}",
        s.config.q.iter().map(ToString::to_string).collect::<Vec<_>>()
    );
    println!(
        "F_1234 has {} terms of degree {:?}",
        f.terms().count(),
        f.total_degree()
    );
    println!(
        "Psi_1234(x, p) has {} terms of degree {:?}",
        psi.terms().count(),
        psi.total_degree()
    );
}
