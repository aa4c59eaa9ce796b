//! The four search strategies side by side.
//!
//! Each strategy returns a committee only when the exact verifier confirms
//! it; the certificate names the worst outside candidate and its exact
//! domination fraction.
//!
//! Run: cargo run --release --example committee_search

use winset::election::RationalThreshold;
use winset::profiles::gen_impartial_culture;
use winset::search::{run_strategy, Strategy, StrategyOptions};

fn main() {
    let e = gen_impartial_culture(40, 10, 5);
    let alpha = RationalThreshold::half();
    let k = 4u32;
    println!(
        "searching n = {}, m = {} for a {k}-member committee at alpha = {alpha}\n",
        e.num_voters(),
        e.num_candidates()
    );

    for strategy in [
        Strategy::Brute,
        Strategy::Greedy,
        Strategy::Lottery,
        Strategy::Recursive,
    ] {
        let opts = StrategyOptions {
            seed: 42,
            ..StrategyOptions::default()
        };
        let result = run_strategy(&e, k, &alpha, strategy, &opts).unwrap();
        match (&result.committee, &result.certificate) {
            (Some(s), Some(cert)) => println!(
                "{strategy:>9}: {s}  (worst challenger {} at {}, nodes {}, samples {})",
                cert.candidate, cert.fraction, result.stats.nodes, result.stats.samples
            ),
            _ => {
                let note = result
                    .stats
                    .best_attempt
                    .as_ref()
                    .map(|a| format!("best attempt {} at {}", a.committee, a.certificate.fraction))
                    .unwrap_or_else(|| "no attempt recorded".into());
                println!("{strategy:>9}: absent ({note})");
            }
        }
    }

    // Brute force doubles as the completeness oracle: absent here means
    // absent everywhere.
    println!("\nminimum committee size passing alpha = 1/2 on this instance:");
    for size in 1..=k {
        let opts = StrategyOptions::default();
        let result = run_strategy(&e, size, &alpha, Strategy::Brute, &opts).unwrap();
        match result.committee {
            Some(s) => {
                println!("  k = {size}: {s}");
                break;
            }
            None => println!("  k = {size}: none exists"),
        }
    }
}
