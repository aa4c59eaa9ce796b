//! Oracle suites tying the guarantees to concrete instances.
//!
//! Three suites: `thm6` exhaustively checks the cycle-product lower bound,
//! `cor1` checks that the uniform committee lottery on a full-factorial
//! profile is dominated at exactly `(1/(k+1))(1 − k/m)` per candidate, and
//! `claim-high` checks the expectation inequality behind the probabilistic
//! argument — averaged over a committee distribution, the bottom `α·n`
//! activated committee ranks exceed `∫₀^α g(x) dx` strictly.
//!
//! Wherever the distribution is rational the arithmetic is exact end to end
//! (`thm6` is all integers, `cor1` asserts a zero rational margin, and the
//! identity-activation `claim-high` path compares exact rationals); margins
//! are recorded rather than asserted against a floor, since for a
//! near-degenerate distribution the strict gap can be arbitrarily small.

use crate::combinatorics::{binomial, combinations};
use crate::election::{Committee, CommitteeDistribution, Election, RationalThreshold, Weight};
use crate::error::{Error, Result};
use crate::lottery::ActivationSpec;
use crate::profiles::{gen_cycle_product, gen_full_factorial};
use num::rational::BigRational;
use num::{BigInt, Zero};
use serde::Serialize;

/// One checked case: a quantity, the bound it is held against, and the
/// signed margin in the satisfying direction. Exact quantities carry their
/// fraction rendering alongside the binary64 one.
#[derive(Clone, Debug, Serialize)]
pub struct CaseRecord {
    pub case: String,
    pub quantity: f64,
    pub bound: f64,
    pub margin: f64,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quantity_exact: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound_exact: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub passed: bool,
    pub details: Vec<CaseRecord>,
}

impl VerificationReport {
    fn from_cases(suite: &str, details: Vec<CaseRecord>) -> Self {
        VerificationReport {
            suite: suite.to_string(),
            passed: details.iter().all(|c| c.ok),
            details,
        }
    }
}

/// Exhaustive verification on the `(k+1)`-by-`t` cycle product: every
/// size-`k` committee has an outside candidate preferred by at least a
/// `(2/(k+1))(1 − 1/t)` fraction of voters. The comparison is the exact
/// integer cross-product `count·(k+1)·t ≥ 2(t−1)·n`.
pub fn verify_theorem6(k: u32, t: u32, node_budget: u64) -> Result<VerificationReport> {
    if k < 1 || t < 2 {
        return Err(Error::InvalidParameter(
            "thm6 needs k >= 1 and t >= 2".into(),
        ));
    }
    let e = gen_cycle_product(k + 1, t)?;
    let m = e.num_candidates();
    let n = e.num_voters() as u128;
    let needed = binomial(m, k);
    if needed > node_budget as u128 {
        return Err(Error::BudgetExceeded {
            needed,
            budget: node_budget,
        });
    }
    let rhs = 2 * (t as u128 - 1) * n;
    let scale = (k as u128 + 1) * t as u128;
    let bound_f64 = rhs as f64 / scale as f64;
    let mut details = Vec::with_capacity(needed as usize);
    for members in combinations(m, k) {
        let s = Committee::new(members)?;
        let (candidate, count) = e.max_domination(&s)?;
        let ok = count as u128 * scale >= rhs;
        details.push(CaseRecord {
            case: format!("committee {s} worst candidate {candidate}"),
            quantity: count as f64,
            bound: bound_f64,
            margin: count as f64 - bound_f64,
            ok,
            quantity_exact: Some(format!("{count}")),
            bound_exact: Some(format!("{rhs}/{scale}")),
        });
    }
    Ok(VerificationReport::from_cases("thm6", details))
}

/// Tightness of the stable-lottery bound on the full-factorial profile:
/// under the uniform distribution over size-`k` committees, every candidate
/// is preferred over the drawn committee by exactly a `(1/(k+1))(1 − k/m)`
/// fraction of voters in expectation. All arithmetic is rational; the
/// margin must be exactly zero.
pub fn verify_cor1_tightness(m: u32, k: u32) -> Result<VerificationReport> {
    if !(2..=6).contains(&m) || k < 1 || k >= m {
        return Err(Error::InvalidParameter(
            "cor1 needs 2 <= m <= 6 and 1 <= k < m".into(),
        ));
    }
    let e = gen_full_factorial(m)?;
    let n = e.num_voters();
    let committees: Vec<Committee> = combinations(m, k)
        .map(Committee::new)
        .collect::<Result<_>>()?;
    let count = BigInt::from(committees.len());
    let bound = BigRational::new(BigInt::from(m - k), BigInt::from((k as u64 + 1) * m as u64));
    let mut details = Vec::with_capacity(m as usize);
    for a in 1..=m {
        let mut total = BigInt::zero();
        for s in &committees {
            total += BigInt::from(e.dominator_count(a, s)?);
        }
        let expectation = BigRational::new(total, BigInt::from(n) * count.clone());
        let ok = expectation == bound;
        let margin = &expectation - &bound;
        details.push(CaseRecord {
            case: format!("candidate {a}"),
            quantity: expectation.to_f64(),
            bound: bound.to_f64(),
            margin: margin.to_f64(),
            ok,
            quantity_exact: Some(expectation.to_string()),
            bound_exact: Some(bound.to_string()),
        });
    }
    Ok(VerificationReport::from_cases("cor1", details))
}

fn check_alpha_n_integral(e: &Election, alpha: &RationalThreshold) -> Result<usize> {
    if !alpha.times_is_integral(e.num_voters()) {
        return Err(Error::InvalidParameter(format!(
            "alpha {} times n = {} is not an integer",
            alpha,
            e.num_voters()
        )));
    }
    Ok(alpha.floor_times(e.num_voters()) as usize)
}

/// The per-committee sum over the `α·n` voters with the smallest ranks,
/// with ties broken by voter id. Only the multiset of smallest ranks enters
/// the sum, so the tie rule cannot change the value — it only pins the
/// reported voter set.
fn bottom_rank_sum<W: Weight>(
    e: &Election,
    d: &CommitteeDistribution<W>,
    s: &Committee,
    u_size: usize,
) -> Result<Vec<W>> {
    let mut ranks: Vec<(W, u32)> = (1..=e.num_voters())
        .map(|v| Ok((e.rank_committee(d, v, s)?, v)))
        .collect::<Result<_>>()?;
    ranks.sort_by(|a, b| {
        a.0.partial_cmp(&b.0)
            .expect("ranks are comparable")
            .then(a.1.cmp(&b.1))
    });
    Ok(ranks.into_iter().take(u_size).map(|(r, _)| r).collect())
}

/// The expectation inequality, exact-rational path. Requires `α·n` integral
/// and an explicit rational distribution; the activation is the identity so
/// every value stays rational. Checks strictly:
///
/// `E_{S∼Δ}[ (1/n) Σ_{v ∈ U_S} rank_v(S) ] > α²/2`
///
/// where `U_S` is the `α·n` voters ranking `S` lowest.
pub fn verify_claim_high_exact(
    e: &Election,
    d: &CommitteeDistribution<BigRational>,
    alpha: &RationalThreshold,
) -> Result<VerificationReport> {
    let u_size = check_alpha_n_integral(e, alpha)?;
    let n = BigRational::from_integer(BigInt::from(e.num_voters()));
    let mut expectation: BigRational = num::Zero::zero();
    for (s, weight) in d.support() {
        let bottom = bottom_rank_sum(e, d, s, u_size)?;
        let sum: BigRational = bottom.into_iter().sum();
        expectation += weight * (sum / &n);
    }
    let bound = BigRational::new(
        BigInt::from(alpha.numerator() * alpha.numerator()),
        BigInt::from(2 * alpha.denominator() * alpha.denominator()),
    );
    let margin = &expectation - &bound;
    let record = CaseRecord {
        case: format!("bottom-{alpha} expectation vs integral, identity activation"),
        quantity: expectation.to_f64(),
        bound: bound.to_f64(),
        margin: margin.to_f64(),
        ok: expectation > bound,
        quantity_exact: Some(expectation.to_string()),
        bound_exact: Some(bound.to_string()),
    };
    Ok(VerificationReport::from_cases("claim-high", vec![record]))
}

/// The expectation inequality for any catalogue activation, binary64 path:
/// `E_{S∼Δ}[ (1/n) Σ_{v ∈ U_S} g(rank_v(S)) ] > ∫₀^α g(x) dx`.
pub fn verify_claim_high(
    e: &Election,
    d: &CommitteeDistribution<f64>,
    alpha: &RationalThreshold,
    g: &ActivationSpec,
) -> Result<VerificationReport> {
    let u_size = check_alpha_n_integral(e, alpha)?;
    let n = e.num_voters() as f64;
    let mut expectation = 0.0;
    for (s, weight) in d.support() {
        let bottom = bottom_rank_sum(e, d, s, u_size)?;
        let mut sum = 0.0;
        for rank in bottom {
            sum += g.value(rank)?;
        }
        expectation += weight * sum / n;
    }
    let bound = g.integral_g(alpha.as_f64());
    let record = CaseRecord {
        case: format!("bottom-{alpha} expectation vs integral, {g} activation"),
        quantity: expectation,
        bound,
        margin: expectation - bound,
        ok: expectation > bound,
        quantity_exact: None,
        bound_exact: None,
    };
    Ok(VerificationReport::from_cases("claim-high", vec![record]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profiles::gen_cyclic;

    #[test]
    fn theorem6_small_cases() {
        for (k, t) in [(1u32, 3u32), (2, 2), (2, 5)] {
            let report = verify_theorem6(k, t, 100_000).unwrap();
            assert!(report.passed, "k={k} t={t}");
            assert_eq!(report.details.len() as u128, binomial((k + 1) * t, k));
        }
        let r = verify_theorem6(2, 5, 100_000).unwrap();
        assert_eq!(r.details.len(), 105);
        for case in &r.details {
            assert!(case.quantity >= 8.0, "{}", case.case);
        }
        let r = verify_theorem6(1, 3, 100_000).unwrap();
        for case in &r.details {
            assert!(case.quantity >= 4.0, "{}", case.case);
        }
    }

    #[test]
    fn theorem6_grid_within_budget() {
        for k in 1..=3u32 {
            for t in 2..=5u32 {
                if (k + 1) * t <= 16 {
                    assert!(verify_theorem6(k, t, 1_000_000).unwrap().passed);
                }
            }
        }
    }

    #[test]
    fn theorem6_budget_error() {
        assert!(matches!(
            verify_theorem6(2, 5, 10),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn cor1_exact_margins() {
        let r = verify_cor1_tightness(3, 1).unwrap();
        assert!(r.passed);
        assert_eq!(r.details[0].quantity_exact.as_deref(), Some("1/3"));
        let r = verify_cor1_tightness(2, 1).unwrap();
        assert_eq!(r.details[0].quantity_exact.as_deref(), Some("1/4"));
        let r = verify_cor1_tightness(4, 2).unwrap();
        assert_eq!(r.details[0].quantity_exact.as_deref(), Some("1/6"));
        for m in 2..=5u32 {
            for k in 1..m {
                assert!(verify_cor1_tightness(m, k).unwrap().passed, "m={m} k={k}");
            }
        }
    }

    #[test]
    fn claim_high_reference_configuration() {
        let e = gen_cyclic(6);
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        let dist = CommitteeDistribution::new(vec![
            (Committee::new([1, 4]).unwrap(), r(9, 20)),
            (Committee::new([2, 5]).unwrap(), r(7, 20)),
            (Committee::new([3, 6]).unwrap(), r(1, 5)),
        ])
        .unwrap();
        let report = verify_claim_high_exact(&e, &dist, &RationalThreshold::half()).unwrap();
        assert!(report.passed);
        let case = &report.details[0];
        assert_eq!(case.quantity_exact.as_deref(), Some("113/480"));
        assert_eq!(case.bound_exact.as_deref(), Some("1/8"));
    }

    #[test]
    fn claim_high_point_mass_at_full_alpha() {
        let e = gen_cyclic(6);
        let dist =
            CommitteeDistribution::<BigRational>::point_mass(Committee::new([2, 5]).unwrap());
        let report = verify_claim_high_exact(&e, &dist, &RationalThreshold::one()).unwrap();
        assert!(report.passed);
        // All ranks are 1, so the expectation is exactly 1 > 1/2.
        assert_eq!(report.details[0].quantity_exact.as_deref(), Some("1"));
    }

    #[test]
    fn claim_high_two_disjoint_favorites_hand_check() {
        // Uniform over {1} and {4} on the 6-cycle at α = 1: committee ranks
        // per voter are 1/2 or 1, cumulative per the blocks picture. Each
        // committee is ranked above the other by exactly half the voters,
        // so E = (1/2)(3·1 + 3·1/2)/6 + (1/2)(3·1 + 3·1/2)/6 = 3/4 > 1/2.
        let e = gen_cyclic(6);
        let half = BigRational::new(1.into(), 2.into());
        let dist = CommitteeDistribution::new(vec![
            (Committee::new([1]).unwrap(), half.clone()),
            (Committee::new([4]).unwrap(), half),
        ])
        .unwrap();
        let report = verify_claim_high_exact(&e, &dist, &RationalThreshold::one()).unwrap();
        assert!(report.passed);
        assert_eq!(report.details[0].quantity_exact.as_deref(), Some("3/4"));
    }

    #[test]
    fn claim_high_needs_integral_alpha_n() {
        let e = gen_cyclic(5);
        let dist = CommitteeDistribution::<BigRational>::point_mass(Committee::new([1]).unwrap());
        assert!(matches!(
            verify_claim_high_exact(&e, &dist, &RationalThreshold::half()),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn claim_high_float_path_across_catalogue() {
        let e = gen_cyclic(6);
        let dist = CommitteeDistribution::new(vec![
            (Committee::new([1, 4]).unwrap(), 0.45),
            (Committee::new([2, 5]).unwrap(), 0.35),
            (Committee::new([3, 6]).unwrap(), 0.20),
        ])
        .unwrap();
        for g in [
            ActivationSpec::identity(2).unwrap(),
            ActivationSpec::kth_root(2).unwrap(),
            ActivationSpec::relu_comp(2, 0.3).unwrap(),
        ] {
            let report = verify_claim_high(&e, &dist, &RationalThreshold::half(), &g).unwrap();
            assert!(report.passed, "{g}");
            assert!(report.details[0].margin > 0.0, "{g}");
        }
    }
}
