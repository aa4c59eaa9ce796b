//! Stable candidate lotteries from the confined-adversary game.
//!
//! Solves for a lottery y over candidates such that committees drawn as k
//! i.i.d. samples keep every candidate's expected domination below the
//! 1/(k+1) ceiling, then shows the attacker's best response against it.
//!
//! Run: cargo run --release --example stable_lottery

use winset::election::RationalThreshold;
use winset::lottery::{
    attacker_best_response, expected_domination, sample_committee, solve_undominated_lottery,
    ActivationSpec, SolverOptions,
};
use winset::profiles::gen_impartial_culture;

fn main() {
    let e = gen_impartial_culture(24, 7, 11);
    let k = 2u32;
    let alpha = RationalThreshold::one();
    let g = ActivationSpec::identity(k).unwrap();
    let solution = solve_undominated_lottery(&e, k, &alpha, &g, &SolverOptions::default()).unwrap();

    println!(
        "solved in {} iterations: value {:.6} vs target 1/(k+1) = {:.6}\n",
        solution.iterations, solution.achieved_value, solution.target_value
    );
    println!("lottery weights:");
    for (i, w) in solution.lottery.weights().iter().enumerate() {
        println!(
            "  candidate {:>2}: {:.4} {}",
            i + 1,
            w,
            "#".repeat((w * 60.0) as usize)
        );
    }

    println!(
        "\nexpected domination per candidate (all must stay below {:.4}):",
        1.0 / (k as f64 + 1.0)
    );
    for a in 1..=e.num_candidates() {
        let d = expected_domination(&e, &solution.lottery, k, a).unwrap();
        println!("  candidate {a:>2}: {d:.4}");
    }

    let br = attacker_best_response(&e, &solution.lottery, k, &alpha, &g).unwrap();
    println!(
        "\nattacker's best response: candidate {} over voters {:?} pays {:.4}",
        br.candidate, br.voters, br.value
    );

    println!("\ncommittees drawn from the lottery:");
    for seed in 0..5u64 {
        let s = sample_committee(&solution.lottery, k, seed).unwrap();
        let (worst, count) = e.max_domination(&s).unwrap();
        println!(
            "  seed {seed}: {s} (worst challenger {worst} at {count}/{})",
            e.num_voters()
        );
    }
}
