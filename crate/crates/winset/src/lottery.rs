//! The confined-adversary zero-sum game and its lottery solver.
//!
//! The defender picks a distribution over committees of size at most `k`;
//! the attacker picks a candidate `a` *and* a voter subset `U` with
//! `|U| ≤ α·n`, and collects `(1/n) Σ_{v∈U} g(rank_v(a))` where the rank of
//! `a` at `v` is the probability that a drawn committee sits entirely below
//! `a` in `v`'s order. Restricting the defender to product distributions
//! `Δ = y^k` (draw `k` candidates i.i.d. from a candidate lottery `y`)
//! makes the rank a closed form, `rank_v(a) = (Σ_{b: a ≻_v b} y_b)^k`, and
//! the payoff convex in `y` whenever the activation `g` keeps `g(x^k)`
//! convex. Minimizing over the candidate simplex instead of over explicit
//! committee distributions cuts the dimension from C(m,k) to m while still
//! achieving the game value, which is bounded by `∫_{1−α}^1 g(x^k) dx`.
//!
//! The solver is entropic mirror descent over the simplex with the
//! subgradient taken at the attacker's exact best response; it tracks and
//! returns the best iterate. Whether an *arbitrary* optimal committee
//! distribution is always realizable as a product `y^k` is not claimed
//! anywhere; the product form is simply sufficient to reach the bound.
//!
//! Bounds here are certified as `achieved ≤ target + tolerance`: the theory
//! makes the inequality strict, but a float comparison cannot witness
//! strictness, so strictness stays a theory fact.

use crate::election::{Committee, Election, RationalThreshold};
use crate::error::{Error, Result};
use crate::rng::SplitMix64;
use serde::Serialize;

/// Activation catalogue: non-constant, non-decreasing `g: [0,1] → R≥0` with
/// `g(x^k)` convex. Writing `h(x) = g(x^k)`:
///
/// * `identity`   — `g(x) = x`,                 `h(x) = x^k`
/// * `kth-root`   — `g(x) = x^(1/k)`,           `h(x) = x`
/// * `relu-comp`  — `g(x) = max(0, x^(1/k) − t)`, `h(x) = max(0, x − t)`
///
/// The catalogue is closed so convexity is checkable and every integral the
/// solver and the bound tables need has an exact antiderivative.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ActivationKind {
    Identity,
    KthRoot,
    ReluComp { shift: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ActivationSpec {
    kind: ActivationKind,
    k: u32,
}

impl ActivationSpec {
    pub fn identity(k: u32) -> Result<Self> {
        Self::with_kind(ActivationKind::Identity, k)
    }

    pub fn kth_root(k: u32) -> Result<Self> {
        Self::with_kind(ActivationKind::KthRoot, k)
    }

    pub fn relu_comp(k: u32, shift: f64) -> Result<Self> {
        Self::with_kind(ActivationKind::ReluComp { shift }, k)
    }

    pub fn with_kind(kind: ActivationKind, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("activation needs k >= 1".into()));
        }
        if let ActivationKind::ReluComp { shift } = kind {
            if !(0.0..1.0).contains(&shift) {
                return Err(Error::InvalidParameter(format!(
                    "relu shift {shift} outside [0, 1)"
                )));
            }
        }
        Ok(ActivationSpec { kind, k })
    }

    pub fn kind(&self) -> ActivationKind {
        self.kind
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// `g(x)` for `x ∈ [0, 1]`; monotone non-decreasing.
    pub fn value(&self, x: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::InvalidParameter(format!(
                "activation argument {x} outside [0, 1]"
            )));
        }
        Ok(match self.kind {
            ActivationKind::Identity => x,
            ActivationKind::KthRoot => x.powf(1.0 / self.k as f64),
            ActivationKind::ReluComp { shift } => (x.powf(1.0 / self.k as f64) - shift).max(0.0),
        })
    }

    /// `h(x) = g(x^k)`.
    pub fn h(&self, x: f64) -> f64 {
        match self.kind {
            ActivationKind::Identity => x.powi(self.k as i32),
            ActivationKind::KthRoot => x,
            ActivationKind::ReluComp { shift } => (x - shift).max(0.0),
        }
    }

    /// Right derivative of `h`; at the relu kink the one-sided choice from
    /// the right keeps subgradients deterministic.
    pub fn h_right_deriv(&self, x: f64) -> f64 {
        match self.kind {
            ActivationKind::Identity => {
                if self.k == 1 {
                    1.0
                } else {
                    self.k as f64 * x.powi(self.k as i32 - 1)
                }
            }
            ActivationKind::KthRoot => 1.0,
            ActivationKind::ReluComp { shift } => {
                if x >= shift {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }

    /// `∫_0^alpha g(x) dx` by exact antiderivative.
    pub fn integral_g(&self, alpha: f64) -> f64 {
        let k = self.k as f64;
        match self.kind {
            ActivationKind::Identity => alpha * alpha / 2.0,
            ActivationKind::KthRoot => k / (k + 1.0) * alpha.powf((k + 1.0) / k),
            ActivationKind::ReluComp { shift } => {
                let t = shift;
                if alpha <= t.powi(self.k as i32) {
                    0.0
                } else {
                    k / (k + 1.0) * alpha.powf((k + 1.0) / k)
                        + t.powi(self.k as i32 + 1) / (k + 1.0)
                        - t * alpha
                }
            }
        }
    }

    /// `∫_{1−alpha}^1 g(x^k) dx` by exact antiderivative.
    pub fn integral_h_tail(&self, alpha: f64) -> f64 {
        let k = self.k as f64;
        match self.kind {
            ActivationKind::Identity => (1.0 - (1.0 - alpha).powi(self.k as i32 + 1)) / (k + 1.0),
            ActivationKind::KthRoot => (1.0 - (1.0 - alpha) * (1.0 - alpha)) / 2.0,
            ActivationKind::ReluComp { shift } => {
                let t = shift;
                let lo = (1.0 - alpha).max(t);
                ((1.0 - t) * (1.0 - t) - (lo - t) * (lo - t)) / 2.0
            }
        }
    }
}

impl std::fmt::Display for ActivationSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.kind {
            ActivationKind::Identity => write!(f, "identity"),
            ActivationKind::KthRoot => write!(f, "kth-root"),
            ActivationKind::ReluComp { shift } => write!(f, "relu:{shift}"),
        }
    }
}

/// A catalogue entry not yet bound to a committee size; `identity`,
/// `kth-root`, or `relu:<shift>` in flag form.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ActivationChoice {
    Identity,
    KthRoot,
    Relu(f64),
}

impl ActivationChoice {
    pub fn spec(&self, k: u32) -> Result<ActivationSpec> {
        match *self {
            ActivationChoice::Identity => ActivationSpec::identity(k),
            ActivationChoice::KthRoot => ActivationSpec::kth_root(k),
            ActivationChoice::Relu(shift) => ActivationSpec::relu_comp(k, shift),
        }
    }
}

impl std::str::FromStr for ActivationChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "identity" => Ok(ActivationChoice::Identity),
            "kth-root" => Ok(ActivationChoice::KthRoot),
            _ => {
                if let Some(t) = s.strip_prefix("relu:") {
                    let shift: f64 = t
                        .parse()
                        .map_err(|_| Error::InvalidParameter(format!("bad relu shift in {s:?}")))?;
                    Ok(ActivationChoice::Relu(shift))
                } else {
                    Err(Error::InvalidParameter(format!(
                        "unknown activation {s:?}; expected identity, kth-root, or relu:<t>"
                    )))
                }
            }
        }
    }
}

/// A probability vector over candidates `1..=m`; the defender's strategy.
/// Committees are drawn as `k` i.i.d. samples from it.
#[derive(Clone, Debug, PartialEq)]
pub struct CandidateLottery {
    weights: Vec<f64>,
}

impl CandidateLottery {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidParameter("empty lottery".into()));
        }
        if weights.iter().any(|&w| !w.is_finite() || w < 0.0) {
            return Err(Error::InvalidParameter("negative lottery weight".into()));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "lottery weights sum to {total}, expected 1"
            )));
        }
        Ok(CandidateLottery { weights })
    }

    pub fn uniform(num_candidates: u32) -> Self {
        let m = num_candidates.max(1) as usize;
        CandidateLottery {
            weights: vec![1.0 / m as f64; m],
        }
    }

    pub fn point_mass(num_candidates: u32, candidate: u32) -> Result<Self> {
        if candidate == 0 || candidate > num_candidates {
            return Err(Error::CandidateOutOfRange {
                candidate,
                num_candidates,
            });
        }
        let mut weights = vec![0.0; num_candidates as usize];
        weights[candidate as usize - 1] = 1.0;
        Ok(CandidateLottery { weights })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn num_candidates(&self) -> u32 {
        self.weights.len() as u32
    }
}

/// Solver knobs. `seed` is carried for reproducibility of any stochastic
/// callers; the mirror-descent path itself is deterministic.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SolverOptions {
    pub max_iterations: usize,
    pub tolerance: f64,
    pub step_scale: f64,
    pub seed: u64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            max_iterations: 20_000,
            tolerance: 1e-4,
            step_scale: 1.0,
            seed: 0,
        }
    }
}

/// The attacker's exact pure best response against a lottery.
#[derive(Clone, Debug)]
pub struct BestResponse {
    pub candidate: u32,
    /// The ⌊α·n⌋ voters with the largest activated ranks, ascending by id.
    pub voters: Vec<u32>,
    pub value: f64,
}

/// Output of [`solve_undominated_lottery`].
#[derive(Clone, Debug)]
pub struct LotterySolution {
    pub lottery: CandidateLottery,
    pub achieved_value: f64,
    pub target_value: f64,
    pub iterations: usize,
}

fn check_lottery(e: &Election, y: &CandidateLottery) -> Result<()> {
    if y.num_candidates() != e.num_candidates() {
        return Err(Error::InvalidParameter(format!(
            "lottery covers {} candidates, election has {}",
            y.num_candidates(),
            e.num_candidates()
        )));
    }
    Ok(())
}

fn check_activation(g: &ActivationSpec, k: u32) -> Result<()> {
    if g.k() != k {
        return Err(Error::InvalidParameter(format!(
            "activation built for k={}, called with k={}",
            g.k(),
            k
        )));
    }
    Ok(())
}

/// Per-voter mass strictly below each candidate: `below[v][c-1] = Σ_{b: c ≻_v b} y_b`.
fn mass_below(e: &Election, y: &[f64]) -> Vec<Vec<f64>> {
    let m = e.num_candidates() as usize;
    let mut below = vec![vec![0.0; m]; e.num_voters() as usize];
    for (v, ranking) in e.rankings().iter().enumerate() {
        let mut suffix = 0.0;
        for i in (0..m).rev() {
            below[v][ranking[i] as usize - 1] = suffix;
            suffix += y[ranking[i] as usize - 1];
        }
    }
    below
}

/// `rank_v(a)` under the product distribution `y^k`, evaluated exactly from
/// the vector: `(Σ_{b: a ≻_v b} y_b)^k`. No sampling.
pub fn candidate_rank_under_lottery(
    e: &Election,
    y: &CandidateLottery,
    k: u32,
    v: u32,
    a: u32,
) -> Result<f64> {
    check_lottery(e, y)?;
    if k == 0 {
        return Err(Error::InvalidParameter("k must be >= 1".into()));
    }
    // Reuse prefers() validation for v and a.
    e.prefers(v, a, a)?;
    let ranking = e.ranking(v)?;
    let mut seen = false;
    let mut below = 0.0;
    for &c in ranking {
        if seen {
            below += y.weights()[c as usize - 1];
        }
        if c == a {
            seen = true;
        }
    }
    Ok(below.powi(k as i32))
}

/// Expected fraction of voters preferring `a` over a committee drawn from
/// `y^k`: `(1/n) Σ_v rank_v(a)`, evaluated exactly.
pub fn expected_domination(e: &Election, y: &CandidateLottery, k: u32, a: u32) -> Result<f64> {
    check_lottery(e, y)?;
    let mut total = 0.0;
    for v in 1..=e.num_voters() {
        total += candidate_rank_under_lottery(e, y, k, v, a)?;
    }
    Ok(total / e.num_voters() as f64)
}

/// The attacker's exact best response: for each candidate take the ⌊α·n⌋
/// voters with the largest `g(rank_v(a))` (ties by smaller voter id), then
/// the candidate with the largest resulting average (ties by smaller id).
pub fn attacker_best_response(
    e: &Election,
    y: &CandidateLottery,
    k: u32,
    alpha: &RationalThreshold,
    g: &ActivationSpec,
) -> Result<BestResponse> {
    check_lottery(e, y)?;
    check_activation(g, k)?;
    let below = mass_below(e, y.weights());
    Ok(best_response_inner(e, &below, alpha, g).0)
}

/// Returns the best response plus, for the chosen candidate, the selected
/// voters' below-masses (the subgradient needs them).
struct ScoredResponse {
    value: f64,
    candidate: u32,
    /// Selected (0-based voter, mass strictly below the candidate) pairs.
    chosen: Vec<(usize, f64)>,
}

fn best_response_inner(
    e: &Election,
    below: &[Vec<f64>],
    alpha: &RationalThreshold,
    g: &ActivationSpec,
) -> (BestResponse, Vec<(usize, f64)>) {
    let n = e.num_voters() as usize;
    let u_size = alpha.floor_times(e.num_voters()) as usize;
    let mut best: Option<ScoredResponse> = None;
    let mut scored: Vec<(f64, usize, f64)> = Vec::with_capacity(n);
    for a in 1..=e.num_candidates() {
        scored.clear();
        for (v, row) in below.iter().enumerate() {
            let r = row[a as usize - 1];
            scored.push((g.h(r), v, r));
        }
        scored.sort_unstable_by(|x, y| y.0.total_cmp(&x.0).then(x.1.cmp(&y.1)));
        let value: f64 = scored[..u_size].iter().map(|t| t.0).sum::<f64>() / n as f64;
        if best.as_ref().is_none_or(|b| value > b.value) {
            let chosen = scored[..u_size].iter().map(|t| (t.1, t.2)).collect();
            best = Some(ScoredResponse {
                value,
                candidate: a,
                chosen,
            });
        }
    }
    let best = best.expect("at least one candidate");
    let mut voters: Vec<u32> = best.chosen.iter().map(|&(v, _)| v as u32 + 1).collect();
    voters.sort_unstable();
    (
        BestResponse {
            candidate: best.candidate,
            voters,
            value: best.value,
        },
        best.chosen,
    )
}

/// Minimizes the confined-adversary payoff `φ(y) = max_{a,U} (1/n) Σ_{v∈U}
/// g(rank_v(a))` over the candidate simplex by entropic mirror descent with
/// step `step_scale/√iter`, taking the subgradient at the exact best
/// response and keeping the best iterate seen.
///
/// The guarantee behind the target is `min_y φ(y) < ∫_{1−α}^1 g(x^k) dx`, so
/// the run *succeeds* when the best iterate satisfies
/// `achieved ≤ target + tolerance`; otherwise it reports
/// [`Error::NotConverged`] carrying the best iterate — a solver-budget
/// failure, not evidence of nonexistence.
pub fn solve_undominated_lottery(
    e: &Election,
    k: u32,
    alpha: &RationalThreshold,
    g: &ActivationSpec,
    opts: &SolverOptions,
) -> Result<LotterySolution> {
    check_activation(g, k)?;
    if opts.tolerance <= 0.0 {
        return Err(Error::InvalidParameter("tolerance must be positive".into()));
    }
    let m = e.num_candidates() as usize;
    let n = e.num_voters() as f64;
    let target = g.integral_h_tail(alpha.as_f64());
    let mut y = vec![1.0 / m as f64; m];
    let mut best_y = y.clone();
    let mut best_value = f64::INFINITY;
    let mut iterations = 0;
    for iter in 1..=opts.max_iterations {
        iterations = iter;
        let below = mass_below(e, &y);
        let (response, chosen) = best_response_inner(e, &below, alpha, g);
        if response.value < best_value {
            best_value = response.value;
            best_y.copy_from_slice(&y);
        }
        if best_value <= target - opts.tolerance {
            break;
        }
        // Subgradient wrt y_b: (1/n) Σ_{v∈U, a ≻_v b} h'(r_v).
        let a = response.candidate;
        let mut grad = vec![0.0; m];
        for &(v, r) in &chosen {
            let slope = g.h_right_deriv(r);
            if slope == 0.0 {
                continue;
            }
            let ranking = &e.rankings()[v];
            let pos_a = e.pos(v, a) as usize;
            for &b in &ranking[pos_a + 1..] {
                grad[b as usize - 1] += slope / n;
            }
        }
        // Entropic update, shifted by the max for numerical stability.
        let eta = opts.step_scale / (iter as f64).sqrt();
        let max_g = grad.iter().cloned().fold(f64::MIN, f64::max);
        let mut total = 0.0;
        for b in 0..m {
            y[b] *= (-eta * (grad[b] - max_g)).exp();
            total += y[b];
        }
        for w in y.iter_mut() {
            *w /= total;
        }
    }
    let lottery = CandidateLottery { weights: best_y };
    if best_value <= target + opts.tolerance {
        Ok(LotterySolution {
            lottery,
            achieved_value: best_value,
            target_value: target,
            iterations,
        })
    } else {
        Err(Error::NotConverged {
            achieved: best_value,
            target,
            lottery,
        })
    }
}

/// Draws `k` candidates i.i.d. from `y` and returns the deduplicated
/// canonical committee (size at most `k`). Deterministic per seed.
pub fn sample_committee(y: &CandidateLottery, k: u32, seed: u64) -> Result<Committee> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be >= 1".into()));
    }
    let mut rng = SplitMix64::new(seed);
    Ok(sample_committee_with(y, k, &mut rng))
}

/// Sampling core shared with the search strategies, which thread one RNG
/// stream through many draws.
pub(crate) fn sample_committee_with(
    y: &CandidateLottery,
    k: u32,
    rng: &mut SplitMix64,
) -> Committee {
    let weights = y.weights();
    let mut members = std::collections::BTreeSet::new();
    for _ in 0..k {
        let u = rng.next_f64();
        let mut acc = 0.0;
        let mut drawn = weights.len() as u32;
        for (i, w) in weights.iter().enumerate() {
            acc += w;
            if u < acc {
                drawn = i as u32 + 1;
                break;
            }
        }
        members.insert(drawn);
    }
    Committee::new(members).expect("at least one draw")
}
