//! The alpha-vs-k guarantee table.
//!
//! Prints, for each committee size k: the universal floor 2/(k+1), the
//! logarithmic closed form (thm1), the shifted-ReLU optimum (thm4) with its
//! shift, and the recursive refinement (dp), then locates where the
//! recursion first beats the closed form and the constant it tends to.
//!
//! Run: cargo run --release --example bounds_table

use winset::bounds::{
    bound_rows_csv, theorem5_constant, theorem7_crossover, theorem7_table, DpBase,
};

fn main() {
    let rows = theorem7_table(12, DpBase::Thm1);
    println!("alpha thresholds for small committees:\n");
    println!("{}", bound_rows_csv(&rows));

    println!("the smallest committee size guaranteeing a Condorcet winning set:");
    let first_half = rows.iter().find(|r| r.thm1 <= 0.5).map(|r| r.k);
    println!("  first k with thm1 <= 1/2: {:?}\n", first_half);

    let (c, gamma) = theorem5_constant();
    println!("asymptotically, alpha = c/k committees exist with");
    println!("  c = {c:.5} at gamma = {gamma:.5}\n");

    let rows = theorem7_table(320, DpBase::Thm1);
    match theorem7_crossover(&rows, DpBase::Thm1) {
        Some(k) => {
            let row = &rows[k as usize - 1];
            println!("the recursive bound first improves on the closed form at k = {k}:");
            println!("  dp = {:.8} vs thm1 = {:.8}", row.dp, row.thm1);
        }
        None => println!("no crossover up to k = 320"),
    }
}
