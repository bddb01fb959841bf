//! Leading terms of `Psi_B` under tree weights: the unique minimal matching
//! is the edge-disjoint path system of `B` in the tree.
//!
//! Run with `cargo run --release --example tree_degenerations ["((1,2),(3,4),5);"]`.

use coxspin::combinat::even_subsets;
use coxspin::treedeg::{disjoint_path_partition, enumerate_trees, leading_form_psi, parse_newick, to_newick};

fn main() {
    let tree = match std::env::args().nth(1) {
        Some(s) => parse_newick(&s).unwrap_or_else(|e| panic!("{e}")),
        None => parse_newick("((1:2,2:1):1,(3:1,(4:1,5:3):2):1,6:1);").unwrap(),
    };
    println!("tree {}", to_newick(&tree));
    for b in even_subsets(tree.n()).unwrap().into_iter().filter(|b| b.len() >= 4) {
        let lead = leading_form_psi(&b, &tree, None).unwrap();
        let dpp = disjoint_path_partition(&tree, &b).unwrap();
        println!(
            "  B = {:<7} leading {:<16} length {:<3} paths {:?}",
            b.label(),
            lead.monomial(),
            lead.length.to_string(),
            dpp.pairs
        );
    }
    for n in 4..=7 {
        println!("trivalent trees on {n} leaves: {}", enumerate_trees(n).unwrap().len());
    }
}
