//! Committee search: four strategies, each returning a verifiable
//! certificate.
//!
//! Every strategy reports the exact worst outside candidate of whatever
//! committee it produced (`max_domination` re-run by an independent
//! verifier pass), so a returned committee can always be checked without
//! trusting the search path. `brute_force_search` is the completeness
//! oracle: when it returns absent for some `(k, α)`, no sound strategy may
//! return a committee for the same query.

use crate::combinatorics::{binomial, combinations};
use crate::election::{Committee, Election, Fraction, RationalThreshold};
use crate::error::{Error, Result};
use crate::lottery::{
    sample_committee_with, solve_undominated_lottery, ActivationChoice, ActivationSpec,
    CandidateLottery, SolverOptions,
};
use crate::rng::SplitMix64;
use serde::Serialize;

/// Exact domination certificate for a committee: the worst outside
/// candidate, how many voters prefer it over the whole committee, and that
/// count as an exact fraction of the electorate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub candidate: u32,
    pub count: u32,
    pub fraction: Fraction,
}

/// A committee together with its certificate; used for best-effort results
/// when a strategy comes up empty-handed.
#[derive(Clone, Debug, Serialize)]
pub struct Attempt {
    pub committee: Committee,
    pub certificate: Certificate,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SearchStats {
    /// Committees examined by exhaustive enumeration.
    pub nodes: u64,
    /// Committees drawn by sampling strategies.
    pub samples: u32,
    /// Mirror-descent iterations spent in lottery solves.
    pub solver_iterations: u64,
    /// Rejected draws in the recursive strategy's per-level resampling.
    pub resamples: u32,
    /// Best committee seen when no verified committee is returned.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub best_attempt: Option<Attempt>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Brute,
    Greedy,
    Lottery,
    Recursive,
}

impl std::fmt::Display for Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Strategy::Brute => "brute",
            Strategy::Greedy => "greedy",
            Strategy::Lottery => "lottery",
            Strategy::Recursive => "recursive",
        };
        write!(f, "{name}")
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchResult {
    pub strategy: Strategy,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub committee: Option<Committee>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    pub stats: SearchStats,
}

pub(crate) fn certificate_for(e: &Election, s: &Committee) -> Result<Certificate> {
    let (candidate, count) = e.max_domination(s)?;
    Ok(Certificate {
        candidate,
        count,
        fraction: Fraction::new(count as u64, e.num_voters() as u64),
    })
}

/// Exhaustive scan of all size-`k` committees in lexicographic order.
/// Returns the lexicographically smallest α-undominated one, or absent with
/// the best committee (minimal max-domination count) recorded in stats.
pub fn brute_force_search(
    e: &Election,
    k: u32,
    alpha: &RationalThreshold,
    node_budget: u64,
) -> Result<SearchResult> {
    if k == 0 || k > e.num_candidates() {
        return Err(Error::InvalidParameter(format!(
            "committee size {k} outside 1..={}",
            e.num_candidates()
        )));
    }
    let needed = binomial(e.num_candidates(), k);
    if needed > node_budget as u128 {
        return Err(Error::BudgetExceeded {
            needed,
            budget: node_budget,
        });
    }
    let n = e.num_voters();
    let mut nodes = 0u64;
    let mut best: Option<(u32, Committee)> = None;
    for members in combinations(e.num_candidates(), k) {
        nodes += 1;
        let s = Committee::new(members)?;
        let (cand, count) = e.max_domination(&s)?;
        let passes = (count as u128) * (alpha.denominator() as u128)
            < (alpha.numerator() as u128) * (n as u128);
        if passes {
            return Ok(SearchResult {
                strategy: Strategy::Brute,
                committee: Some(s.clone()),
                certificate: Some(Certificate {
                    candidate: cand,
                    count,
                    fraction: Fraction::new(count as u64, n as u64),
                }),
                stats: SearchStats {
                    nodes,
                    ..SearchStats::default()
                },
            });
        }
        if best.as_ref().is_none_or(|(c, _)| count < *c) {
            best = Some((count, s));
        }
    }
    let best_attempt = match best {
        Some((_, s)) => {
            let certificate = certificate_for(e, &s)?;
            Some(Attempt {
                committee: s,
                certificate,
            })
        }
        None => None,
    };
    Ok(SearchResult {
        strategy: Strategy::Brute,
        committee: None,
        certificate: None,
        stats: SearchStats {
            nodes,
            best_attempt,
            ..SearchStats::default()
        },
    })
}

/// The halving greedy: repeatedly add the remaining candidate that beats
/// (strict majority) the most remaining others, ties by smallest id, then
/// discard it and everything it beats. When no strict-majority progress is
/// possible — every remaining pair is an exact tie — the round also
/// discards the candidates the pick weakly beats, which at that point is
/// all of them.
///
/// With an odd electorate the pairwise relation is a tournament, each round
/// at least halves the pool, and the committee has at most ⌈log₂ m⌉ members
/// that strictly-majority-cover every discarded candidate. With ties the
/// cover can be weak (exactly half), so the certificate reports the exact
/// max domination rather than promising a strict half.
pub fn greedy_halving(e: &Election) -> SearchResult {
    let m = e.num_candidates();
    let n = e.num_voters() as u64;
    // wins[a-1][b-1] = voters preferring a over b.
    let mut wins = vec![vec![0u64; m as usize]; m as usize];
    for v in 0..e.num_voters() as usize {
        for a in 1..=m {
            for b in 1..=m {
                if a != b && e.pos(v, a) < e.pos(v, b) {
                    wins[a as usize - 1][b as usize - 1] += 1;
                }
            }
        }
    }
    let strict = |a: u32, b: u32| 2 * wins[a as usize - 1][b as usize - 1] > n;
    let weak = |a: u32, b: u32| 2 * wins[a as usize - 1][b as usize - 1] >= n;

    let mut remaining: Vec<u32> = (1..=m).collect();
    let mut chosen: Vec<u32> = Vec::new();
    let mut rounds = 0u64;
    while !remaining.is_empty() {
        rounds += 1;
        let (&pick, beats) = remaining
            .iter()
            .map(|a| {
                let beats = remaining
                    .iter()
                    .filter(|&&b| b != *a && strict(*a, b))
                    .count();
                (a, beats)
            })
            .max_by(|x, y| x.1.cmp(&y.1).then(y.0.cmp(x.0)))
            .expect("remaining is nonempty");
        chosen.push(pick);
        let stalled = beats == 0;
        remaining.retain(|&b| b != pick && !strict(pick, b) && !(stalled && weak(pick, b)));
    }
    let committee = Committee::new(chosen).expect("at least one pick");
    let certificate = certificate_for(e, &committee).expect("committee is valid");
    SearchResult {
        strategy: Strategy::Greedy,
        committee: Some(committee),
        certificate: Some(certificate),
        stats: SearchStats {
            nodes: rounds,
            ..SearchStats::default()
        },
    }
}

fn pad_to_size(sampled: &Committee, k: u32, y: &CandidateLottery) -> Committee {
    let k = k.min(y.num_candidates()) as usize;
    if sampled.size() >= k {
        return sampled.clone();
    }
    // Unused candidates by descending weight, ties by smallest id.
    let mut unused: Vec<u32> = (1..=y.num_candidates())
        .filter(|&c| !sampled.contains(c))
        .collect();
    unused.sort_by(|&a, &b| {
        y.weights()[b as usize - 1]
            .total_cmp(&y.weights()[a as usize - 1])
            .then(a.cmp(&b))
    });
    let mut members: Vec<u32> = sampled.members().to_vec();
    members.extend(unused.into_iter().take(k - sampled.size()));
    Committee::new(members).expect("nonempty")
}

/// Solves the confined-adversary game, then draws committees from the
/// optimal lottery (padded to size `k` with the heaviest unused candidates)
/// until one verifies as α-undominated or the sample budget runs out.
///
/// When the existence condition ∫₀^α g ≥ ∫_{1−α}^1 g(x^k) holds the drawn
/// committees are α-undominated in expectation, so a verified one shows up
/// quickly; otherwise this runs as a best-effort sampler. Solver
/// non-convergence is propagated.
pub fn lottery_search(
    e: &Election,
    k: u32,
    alpha: &RationalThreshold,
    g: &ActivationSpec,
    max_samples: u32,
    seed: u64,
) -> Result<SearchResult> {
    if k == 0 {
        return Err(Error::InvalidParameter(
            "committee size must be >= 1".into(),
        ));
    }
    if k >= e.num_candidates() {
        // The full candidate set has no outside candidates.
        let committee = Committee::full(e.num_candidates());
        let certificate = certificate_for(e, &committee)?;
        return Ok(SearchResult {
            strategy: Strategy::Lottery,
            committee: Some(committee),
            certificate: Some(certificate),
            stats: SearchStats::default(),
        });
    }
    let opts = SolverOptions {
        seed,
        ..SolverOptions::default()
    };
    let solution = solve_undominated_lottery(e, k, alpha, g, &opts)?;
    let mut rng = SplitMix64::new(seed);
    let mut stats = SearchStats {
        solver_iterations: solution.iterations as u64,
        ..SearchStats::default()
    };
    let mut best: Option<(u32, Committee)> = None;
    for _ in 0..max_samples {
        stats.samples += 1;
        let drawn = sample_committee_with(&solution.lottery, k, &mut rng);
        let s = pad_to_size(&drawn, k, &solution.lottery);
        let (cand, count) = e.max_domination(&s)?;
        let passes = (count as u128) * (alpha.denominator() as u128)
            < (alpha.numerator() as u128) * (e.num_voters() as u128);
        if passes {
            stats.best_attempt = None;
            return Ok(SearchResult {
                strategy: Strategy::Lottery,
                committee: Some(s),
                certificate: Some(Certificate {
                    candidate: cand,
                    count,
                    fraction: Fraction::new(count as u64, e.num_voters() as u64),
                }),
                stats,
            });
        }
        if best.as_ref().is_none_or(|(c, _)| count < *c) {
            best = Some((count, s));
        }
    }
    if let Some((_, s)) = best {
        let certificate = certificate_for(e, &s)?;
        stats.best_attempt = Some(Attempt {
            committee: s,
            certificate,
        });
    }
    Ok(SearchResult {
        strategy: Strategy::Lottery,
        committee: None,
        certificate: None,
        stats,
    })
}

/// Parameters for the recursive strategy: sample a block of size
/// ⌈(1−γ)k⌉ from a lottery, set aside the β fraction of voters that like it
/// least, and recurse on them with the remaining ⌊γk⌋ seats.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct RecursiveParams {
    pub gamma: f64,
    pub beta: f64,
    /// Confinement level for the block lottery. `None` plays the
    /// unconfined game (α = 1), which the asymptotic argument already
    /// finds sufficient; a tighter fraction can be supplied to explore
    /// whether confinement helps in practice.
    pub lottery_alpha: Option<RationalThreshold>,
}

impl Default for RecursiveParams {
    fn default() -> Self {
        let gamma = 0.28467;
        RecursiveParams {
            gamma,
            beta: gamma * gamma,
            lottery_alpha: None,
        }
    }
}

impl RecursiveParams {
    fn validate(&self) -> Result<()> {
        if !(self.gamma > 0.0 && self.gamma < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "gamma {} outside (0, 1)",
                self.gamma
            )));
        }
        if !(self.beta > 0.0 && self.beta < self.gamma) {
            return Err(Error::InvalidParameter(format!(
                "beta {} must lie in (0, gamma = {})",
                self.beta, self.gamma
            )));
        }
        Ok(())
    }
}

/// Per-level draw budget before settling for the draw with the fewest
/// set-aside voters.
const RESAMPLE_BUDGET: u32 = 50;

/// The recursive block-sampling strategy. `k = 1` delegates to brute force.
///
/// Each level solves the unconfined lottery for block size `k_s = ⌈(1−γ)k⌉`
/// under the shifted-ReLU activation at `t = max(0, 2β̂ − 1)` with
/// `β̂ = β^(1/k_s)` (the shift that minimizes the bound's tail integral),
/// samples a block, collects the voters whose activated rank falls below
/// the `g(β)` waterline, and recurses on them with ⌊γk⌋ seats. The union is
/// verified against `alpha` on the original election; if it falls short the
/// exact best-effort certificate is still reported.
pub fn recursive_search(
    e: &Election,
    k: u32,
    alpha: &RationalThreshold,
    params: &RecursiveParams,
    seed: u64,
) -> Result<SearchResult> {
    params.validate()?;
    if k == 0 {
        return Err(Error::InvalidParameter(
            "committee size must be >= 1".into(),
        ));
    }
    if k == 1 {
        let mut result = brute_force_search(e, 1, alpha, u64::MAX)?;
        result.strategy = Strategy::Recursive;
        return Ok(result);
    }
    let mut rng = SplitMix64::new(seed);
    let mut stats = SearchStats::default();
    let members = recursive_level(e, k, params, &mut rng, &mut stats)?;
    let committee = Committee::new(members)?;
    let certificate = certificate_for(e, &committee)?;
    let passes = e.is_alpha_undominated(&committee, alpha)?;
    if passes {
        Ok(SearchResult {
            strategy: Strategy::Recursive,
            committee: Some(committee),
            certificate: Some(certificate),
            stats,
        })
    } else {
        stats.best_attempt = Some(Attempt {
            committee,
            certificate,
        });
        Ok(SearchResult {
            strategy: Strategy::Recursive,
            committee: None,
            certificate: None,
            stats,
        })
    }
}

fn recursive_level(
    e: &Election,
    k: u32,
    params: &RecursiveParams,
    rng: &mut SplitMix64,
    stats: &mut SearchStats,
) -> Result<Vec<u32>> {
    let m = e.num_candidates();
    if k >= m {
        return Ok((1..=m).collect());
    }
    if k == 1 {
        // Bottom of the recursion: the singleton with the smallest max
        // domination on this sub-electorate.
        let mut best: Option<(u32, u32)> = None;
        for a in 1..=m {
            stats.nodes += 1;
            let s = Committee::new([a])?;
            let (_, count) = e.max_domination(&s)?;
            if best.is_none_or(|(c, _)| count < c) {
                best = Some((count, a));
            }
        }
        return Ok(vec![best.expect("m >= 1").1]);
    }

    let block_size = ((1.0 - params.gamma) * k as f64).ceil() as u32;
    let block_size = block_size.clamp(1, k);
    let mut recurse_size = (params.gamma * k as f64).floor() as u32;
    if block_size + recurse_size > k {
        recurse_size = k - block_size;
    }

    // Shifted ReLU tuned to the waterline: β̂ = β^(1/k_s), t = 2β̂ − 1
    // clamped at zero (for small blocks the plain kth-root regime applies).
    let beta_hat = params.beta.powf(1.0 / block_size as f64);
    let shift = (2.0 * beta_hat - 1.0).max(0.0);
    let g = ActivationSpec::relu_comp(block_size, shift)?;
    let solve_alpha = params.lottery_alpha.unwrap_or_else(RationalThreshold::one);
    let lottery =
        match solve_undominated_lottery(e, block_size, &solve_alpha, &g, &SolverOptions::default())
        {
            Ok(solution) => {
                stats.solver_iterations += solution.iterations as u64;
                solution.lottery
            }
            // Best-effort level: the carried iterate is still a simplex point.
            Err(Error::NotConverged { lottery, .. }) => lottery,
            Err(err) => return Err(err),
        };

    let n = e.num_voters();
    let waterline = g.h(beta_hat);
    let mut accepted: Option<(Vec<usize>, Committee)> = None;
    let mut fallback: Option<(usize, Vec<usize>, Committee)> = None;
    for _ in 0..RESAMPLE_BUDGET {
        stats.samples += 1;
        let drawn = sample_committee_with(&lottery, block_size, rng);
        let block = pad_to_size(&drawn, block_size, &lottery);
        // Voters who rank the block below the waterline: the block's rank
        // at v is (mass weakly below v's favorite member)^k_s, so compare
        // h(mass) against h(β̂).
        let mut set_aside: Vec<usize> = Vec::new();
        for v in 0..n as usize {
            let ranking = e.rankings()[v].as_slice();
            let best_pos = block.members().iter().map(|&c| e.pos(v, c)).min().unwrap() as usize;
            let mass: f64 = ranking[best_pos..]
                .iter()
                .map(|&c| lottery.weights()[c as usize - 1])
                .sum();
            if g.h(mass) < waterline {
                set_aside.push(v);
            }
        }
        if set_aside.len() as f64 <= params.beta * n as f64 + 1e-12 {
            accepted = Some((set_aside, block));
            break;
        }
        stats.resamples += 1;
        if fallback
            .as_ref()
            .is_none_or(|(len, _, _)| set_aside.len() < *len)
        {
            fallback = Some((set_aside.len(), set_aside, block));
        }
    }
    let (set_aside, block) = match accepted {
        Some(pair) => pair,
        None => {
            let (_, w, b) = fallback.expect("at least one draw");
            (w, b)
        }
    };

    let mut members: Vec<u32> = block.members().to_vec();
    if recurse_size >= 1 && !set_aside.is_empty() {
        let sub_rankings: Vec<Vec<u32>> =
            set_aside.iter().map(|&v| e.rankings()[v].clone()).collect();
        let sub_election = Election::new(m, sub_rankings)?;
        let sub_members = recursive_level(&sub_election, recurse_size, params, rng, stats)?;
        members.extend(sub_members);
    }
    members.sort_unstable();
    members.dedup();
    Ok(members)
}

/// Strategy-independent knobs for [`run_strategy`].
#[derive(Clone, Debug)]
pub struct StrategyOptions {
    pub seed: u64,
    pub node_budget: u64,
    pub max_samples: u32,
    /// Activation used by the lottery strategy; bound to the query's `k`.
    pub activation: ActivationChoice,
    pub recursive: RecursiveParams,
}

impl Default for StrategyOptions {
    fn default() -> Self {
        StrategyOptions {
            seed: 0,
            node_budget: 10_000_000,
            max_samples: 200,
            activation: ActivationChoice::KthRoot,
            recursive: RecursiveParams::default(),
        }
    }
}

/// Runs one strategy against a `(k, α)` query with a uniform contract:
/// a committee is returned only when the exact verifier confirms it is
/// α-undominated and its size is at most `k`; anything else is demoted to
/// `stats.best_attempt`.
pub fn run_strategy(
    e: &Election,
    k: u32,
    alpha: &RationalThreshold,
    strategy: Strategy,
    opts: &StrategyOptions,
) -> Result<SearchResult> {
    let mut result = match strategy {
        Strategy::Brute => brute_force_search(e, k, alpha, opts.node_budget)?,
        Strategy::Greedy => greedy_halving(e),
        Strategy::Lottery => {
            let g = opts.activation.spec(k)?;
            lottery_search(e, k, alpha, &g, opts.max_samples, opts.seed)?
        }
        Strategy::Recursive => recursive_search(e, k, alpha, &opts.recursive, opts.seed)?,
    };
    if let Some(committee) = result.committee.take() {
        let fits = committee.size() <= k as usize && e.is_alpha_undominated(&committee, alpha)?;
        let certificate = match result.certificate.take() {
            Some(c) => c,
            None => certificate_for(e, &committee)?,
        };
        if fits {
            result.committee = Some(committee);
            result.certificate = Some(certificate);
        } else {
            result.stats.best_attempt = Some(Attempt {
                committee,
                certificate,
            });
        }
    }
    Ok(result)
}
