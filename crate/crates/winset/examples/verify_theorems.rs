//! The verification suites.
//!
//! thm6: exhaustive cycle-product floor; cor1: exact tightness of the
//! uniform committee lottery; claim-high: the strict expectation inequality
//! on the reference configuration, in exact rationals.
//!
//! Run: cargo run --release --example verify_theorems

use num::rational::BigRational;
use winset::election::{Committee, CommitteeDistribution, RationalThreshold};
use winset::profiles::gen_cyclic;
use winset::verify::{verify_claim_high_exact, verify_cor1_tightness, verify_theorem6};

fn main() {
    for (k, t) in [(1u32, 3u32), (2, 2), (2, 5), (3, 4)] {
        let report = verify_theorem6(k, t, 10_000_000).unwrap();
        let tightest = report
            .details
            .iter()
            .min_by(|a, b| a.margin.total_cmp(&b.margin))
            .unwrap();
        println!(
            "thm6 (k = {k}, t = {t}): {} over {} committees; tightest case {} (margin {:+.3})",
            if report.passed { "passed" } else { "FAILED" },
            report.details.len(),
            tightest.case,
            tightest.margin,
        );
    }

    println!();
    for m in 2u32..=5 {
        for k in 1..m {
            let report = verify_cor1_tightness(m, k).unwrap();
            let case = &report.details[0];
            println!(
                "cor1 (m = {m}, k = {k}): {} — every candidate dominated at exactly {}",
                if report.passed { "passed" } else { "FAILED" },
                case.quantity_exact.as_deref().unwrap(),
            );
        }
    }

    println!();
    let e = gen_cyclic(6);
    let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    let dist = CommitteeDistribution::new(vec![
        (Committee::new([1, 4]).unwrap(), r(9, 20)),
        (Committee::new([2, 5]).unwrap(), r(7, 20)),
        (Committee::new([3, 6]).unwrap(), r(1, 5)),
    ])
    .unwrap();
    let report = verify_claim_high_exact(&e, &dist, &RationalThreshold::half()).unwrap();
    let case = &report.details[0];
    println!(
        "claim-high (reference configuration): {} — expectation {} > bound {}",
        if report.passed { "passed" } else { "FAILED" },
        case.quantity_exact.as_deref().unwrap(),
        case.bound_exact.as_deref().unwrap(),
    );
}
