//! Condorcet dimension of the reference instances.
//!
//! The cyclic profile has no majority-undominated single candidate yet a
//! diametric pair suffices; the 3-by-5 cycle product and the minimal
//! 6-voter instance both need three.
//!
//! Run: cargo run --release --example condorcet_dimension

use winset::election::{Committee, Election, RationalThreshold};
use winset::profiles::{gen_cycle_product, gen_cyclic, gen_minimal_dim3};

fn describe(name: &str, e: &Election) {
    let (dimension, witness) = e.condorcet_dimension(10_000_000).unwrap();
    let (worst, count) = e.max_domination(&witness).unwrap();
    println!(
        "{name}: n = {}, m = {}  ->  dimension {dimension}, witness {witness}",
        e.num_voters(),
        e.num_candidates()
    );
    println!(
        "  worst outside candidate {worst} is preferred over the witness by {count}/{} voters\n",
        e.num_voters()
    );
}

fn main() {
    describe("cyclic profile on 6 candidates", &gen_cyclic(6));
    describe("3-by-5 cycle product", &gen_cycle_product(3, 5).unwrap());
    describe("minimal dimension-3 instance", &gen_minimal_dim3());

    // The cyclic profile shows why singletons fail: every candidate has a
    // near-unanimous challenger.
    let e = gen_cyclic(6);
    let half = RationalThreshold::half();
    println!("singletons in the cyclic profile:");
    for a in 1..=6 {
        let s = Committee::new([a]).unwrap();
        let (challenger, count) = e.max_domination(&s).unwrap();
        println!(
            "  {{{a}}}: dominated by {challenger} at {count}/6 -> {}",
            if e.is_alpha_undominated(&s, &half).unwrap() {
                "passes"
            } else {
                "fails"
            }
        );
    }
}
