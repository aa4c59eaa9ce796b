//! Elections, committees, and the exact combinatorial operations on them.
//!
//! An [`Election`] holds `n` voters' strict rankings over `m` candidates.
//! A committee `S` is *dominated* by an outside candidate `a` at threshold
//! `α` when at least an `α` fraction of voters prefer `a` over every member
//! of `S`; it is *α-undominated* when every outside candidate falls strictly
//! below that threshold. A committee that is 1/2-undominated is a Condorcet
//! winning set, and the Condorcet dimension of an election is the size of
//! its smallest Condorcet winning set.
//!
//! All threshold comparisons are exact integer cross-products — floats never
//! touch the strict `< α` boundary, so even-`n` ties behave exactly as the
//! definition demands. Ties anywhere are broken by smallest candidate id
//! (lexicographically smallest committee), which makes every output
//! deterministic and certificates reproducible.

use crate::combinatorics::combinations;
use crate::error::{Error, Result};
use num::rational::BigRational;
use num::ToPrimitive;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

/// A nonempty set of candidate ids, stored sorted ascending (canonical form).
///
/// The derived `Ord` is lexicographic on the sorted member list, so sorting
/// committees or taking `min` yields the canonical lexicographic order used
/// for tie-breaking throughout the crate.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Committee {
    members: Vec<u32>,
}

impl Committee {
    /// Builds the canonical form: members are sorted and deduplicated.
    /// Candidate ids must be ≥ 1 and at least one member must be present.
    pub fn new(members: impl IntoIterator<Item = u32>) -> Result<Self> {
        let mut members: Vec<u32> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        if members.is_empty() {
            return Err(Error::InvalidParameter("committee must be nonempty".into()));
        }
        if members[0] == 0 {
            return Err(Error::InvalidParameter(
                "candidate ids are 1-based; 0 is not a valid member".into(),
            ));
        }
        Ok(Committee { members })
    }

    /// The committee of all candidates `{1, …, m}`.
    pub fn full(num_candidates: u32) -> Self {
        Committee {
            members: (1..=num_candidates).collect(),
        }
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, candidate: u32) -> bool {
        self.members.binary_search(&candidate).is_ok()
    }
}

impl Serialize for Committee {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.members.len()))?;
        for m in &self.members {
            seq.serialize_element(m)?;
        }
        seq.end()
    }
}

impl std::fmt::Display for Committee {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, m) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "}}")
    }
}

/// An exact threshold `α = num/den` in `(0, 1]`, stored in lowest terms.
///
/// Keeping `α` as an integer pair lets the strict "count < α·n" test run as
/// an exact cross-product, which matters precisely at boundaries like
/// `α = 1/2` with an even number of voters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RationalThreshold {
    num: u64,
    den: u64,
}

impl RationalThreshold {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidParameter(
                "threshold denominator is zero".into(),
            ));
        }
        if num == 0 || num > den {
            return Err(Error::InvalidParameter(format!(
                "threshold {num}/{den} outside (0, 1]"
            )));
        }
        let g = num::integer::gcd(num, den);
        Ok(RationalThreshold {
            num: num / g,
            den: den / g,
        })
    }

    pub fn one() -> Self {
        RationalThreshold { num: 1, den: 1 }
    }

    pub fn half() -> Self {
        RationalThreshold { num: 1, den: 2 }
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    pub fn denominator(&self) -> u64 {
        self.den
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// ⌊α·n⌋, computed exactly.
    pub fn floor_times(&self, n: u32) -> u32 {
        ((self.num as u128 * n as u128) / self.den as u128) as u32
    }

    /// Whether `α·n` is an integer.
    pub fn times_is_integral(&self, n: u32) -> bool {
        (self.num as u128 * n as u128).is_multiple_of(self.den as u128)
    }
}

impl std::str::FromStr for RationalThreshold {
    type Err = Error;

    /// Parses the exact fraction form `P/Q`, e.g. `1/2`.
    fn from_str(s: &str) -> Result<Self> {
        let (p, q) = s
            .split_once('/')
            .ok_or_else(|| Error::InvalidParameter(format!("expected fraction P/Q, got {s:?}")))?;
        let num: u64 = p
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("bad numerator in {s:?}")))?;
        let den: u64 = q
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("bad denominator in {s:?}")))?;
        RationalThreshold::new(num, den)
    }
}

impl std::fmt::Display for RationalThreshold {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl Serialize for RationalThreshold {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("RationalThreshold", 3)?;
        st.serialize_field("num", &self.num)?;
        st.serialize_field("den", &self.den)?;
        st.serialize_field("value", &self.as_f64())?;
        st.end()
    }
}

/// An exact non-negative rational, reduced, used for certificates such as
/// domination fractions and stability constants. May exceed 1.
///
/// Serializes as `{num, den, value}` so every exact fraction in JSON output
/// is accompanied by its binary64 rendering.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fraction {
    num: u64,
    den: u64,
}

impl Fraction {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den > 0, "fraction denominator must be positive");
        let g = num::integer::gcd(num.max(1), den);
        if num == 0 {
            Fraction { num: 0, den: 1 }
        } else {
            Fraction {
                num: num / g,
                den: den / g,
            }
        }
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    pub fn denominator(&self) -> u64 {
        self.den
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fraction {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let lhs = self.num as u128 * other.den as u128;
        let rhs = other.num as u128 * self.den as u128;
        lhs.cmp(&rhs)
    }
}

impl Serialize for Fraction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("Fraction", 3)?;
        st.serialize_field("num", &self.num)?;
        st.serialize_field("den", &self.den)?;
        st.serialize_field("value", &self.as_f64())?;
        st.end()
    }
}

impl std::fmt::Display for Fraction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// How a voter orders one committee against another.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommitteeOrdering {
    /// The first committee is (weakly or strongly) preferred.
    FirstAbove,
    /// The second committee is (weakly or strongly) preferred.
    SecondAbove,
    /// The committees are the same set.
    Equal,
}

/// Weight type for committee distributions: either binary64 (solver output)
/// or exact rationals (hand-built distributions). Rank computations carry
/// whichever the distribution holds.
pub trait Weight: Clone + PartialOrd {
    fn zero() -> Self;
    fn one() -> Self;
    fn add_assign(&mut self, other: &Self);
    fn to_f64(&self) -> f64;
}

impl Weight for f64 {
    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Weight for BigRational {
    fn zero() -> Self {
        num::Zero::zero()
    }

    fn one() -> Self {
        num::One::one()
    }

    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

/// A probability distribution over committees with explicit support.
///
/// Support committees are distinct canonical forms kept sorted in
/// lexicographic order; weights are non-negative and sum to 1 within 1e-12.
#[derive(Clone, Debug)]
pub struct CommitteeDistribution<W> {
    support: Vec<(Committee, W)>,
}

impl<W: Weight> CommitteeDistribution<W> {
    pub fn new(mut support: Vec<(Committee, W)>) -> Result<Self> {
        if support.is_empty() {
            return Err(Error::InvalidParameter("empty distribution support".into()));
        }
        support.sort_by(|a, b| a.0.cmp(&b.0));
        for pair in support.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(Error::InvalidParameter(format!(
                    "duplicate support committee {}",
                    pair[0].0
                )));
            }
        }
        let mut total = W::zero();
        for (_, w) in &support {
            if *w < W::zero() {
                return Err(Error::InvalidParameter("negative weight".into()));
            }
            total.add_assign(w);
        }
        if (total.to_f64() - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "weights sum to {}, expected 1",
                total.to_f64()
            )));
        }
        Ok(CommitteeDistribution { support })
    }

    /// Point mass on a single committee.
    pub fn point_mass(committee: Committee) -> Self {
        CommitteeDistribution {
            support: vec![(committee, W::one())],
        }
    }

    pub fn support(&self) -> &[(Committee, W)] {
        &self.support
    }
}

/// An election: `n` voters holding strict rankings over `m` candidates.
///
/// Candidate and voter ids are 1-based dense integers. The per-voter
/// position index (candidate → rank position) is derived at construction and
/// cached. All operations are pure reads of the immutable profile and safe
/// for concurrent callers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Election {
    num_candidates: u32,
    num_voters: u32,
    rankings: Vec<Vec<u32>>,
    positions: Vec<Vec<u32>>,
}

impl Election {
    /// Validates that every ranking is a permutation of `{1, …, m}` and
    /// builds the cached position index.
    pub fn new(num_candidates: u32, rankings: Vec<Vec<u32>>) -> Result<Self> {
        if num_candidates == 0 {
            return Err(Error::InvalidParameter(
                "need at least one candidate".into(),
            ));
        }
        if rankings.is_empty() {
            return Err(Error::InvalidParameter("need at least one voter".into()));
        }
        let m = num_candidates as usize;
        let mut positions = Vec::with_capacity(rankings.len());
        for (v, ranking) in rankings.iter().enumerate() {
            if ranking.len() != m {
                return Err(Error::InvalidParameter(format!(
                    "voter {} ranks {} candidates, expected {}",
                    v + 1,
                    ranking.len(),
                    m
                )));
            }
            let mut pos = vec![u32::MAX; m];
            for (i, &c) in ranking.iter().enumerate() {
                if c == 0 || c > num_candidates {
                    return Err(Error::CandidateOutOfRange {
                        candidate: c,
                        num_candidates,
                    });
                }
                if pos[c as usize - 1] != u32::MAX {
                    return Err(Error::InvalidParameter(format!(
                        "voter {} ranks candidate {} twice",
                        v + 1,
                        c
                    )));
                }
                pos[c as usize - 1] = i as u32;
            }
            positions.push(pos);
        }
        Ok(Election {
            num_candidates,
            num_voters: rankings.len() as u32,
            rankings,
            positions,
        })
    }

    pub fn num_candidates(&self) -> u32 {
        self.num_candidates
    }

    pub fn num_voters(&self) -> u32 {
        self.num_voters
    }

    /// Voter `v`'s ranking, most-preferred first.
    pub fn ranking(&self, v: u32) -> Result<&[u32]> {
        self.check_voter(v)?;
        Ok(&self.rankings[v as usize - 1])
    }

    pub(crate) fn rankings(&self) -> &[Vec<u32>] {
        &self.rankings
    }

    /// 0-based rank position of candidate `c` for 0-based voter index.
    pub(crate) fn pos(&self, v_idx: usize, candidate: u32) -> u32 {
        self.positions[v_idx][candidate as usize - 1]
    }

    fn check_voter(&self, v: u32) -> Result<()> {
        if v == 0 || v > self.num_voters {
            return Err(Error::VoterOutOfRange {
                voter: v,
                num_voters: self.num_voters,
            });
        }
        Ok(())
    }

    fn check_candidate(&self, c: u32) -> Result<()> {
        if c == 0 || c > self.num_candidates {
            return Err(Error::CandidateOutOfRange {
                candidate: c,
                num_candidates: self.num_candidates,
            });
        }
        Ok(())
    }

    pub(crate) fn check_committee(&self, s: &Committee) -> Result<()> {
        // Members are sorted, so the largest id decides.
        self.check_candidate(*s.members().last().unwrap())
    }

    /// Whether voter `v` strictly prefers candidate `a` over candidate `b`.
    /// Irreflexive: `prefers(v, a, a)` is false.
    pub fn prefers(&self, v: u32, a: u32, b: u32) -> Result<bool> {
        self.check_voter(v)?;
        self.check_candidate(a)?;
        self.check_candidate(b)?;
        let idx = v as usize - 1;
        Ok(self.pos(idx, a) < self.pos(idx, b))
    }

    /// Per-voter position of the most-preferred member of `s`.
    fn best_positions(&self, s: &Committee) -> Vec<u32> {
        (0..self.num_voters as usize)
            .map(|v| s.members().iter().map(|&c| self.pos(v, c)).min().unwrap())
            .collect()
    }

    /// Number of voters preferring `a` over every member of `s`; 0 when
    /// `a ∈ s`.
    pub fn dominator_count(&self, a: u32, s: &Committee) -> Result<u32> {
        self.check_candidate(a)?;
        self.check_committee(s)?;
        if s.contains(a) {
            return Ok(0);
        }
        let best = self.best_positions(s);
        Ok(self.count_dominators(a, &best))
    }

    fn count_dominators(&self, a: u32, best_positions: &[u32]) -> u32 {
        (0..self.num_voters as usize)
            .filter(|&v| self.pos(v, a) < best_positions[v])
            .count() as u32
    }

    /// The outside candidate with the largest dominator count, ties broken
    /// by smallest candidate id. Returns the `(0, 0)` sentinel when `s`
    /// already contains every candidate.
    pub fn max_domination(&self, s: &Committee) -> Result<(u32, u32)> {
        self.check_committee(s)?;
        let best = self.best_positions(s);
        let mut result: Option<(u32, u32)> = None;
        for a in 1..=self.num_candidates {
            if s.contains(a) {
                continue;
            }
            let count = self.count_dominators(a, &best);
            let better = match result {
                None => true,
                Some((_, c)) => count > c,
            };
            if better {
                result = Some((a, count));
            }
        }
        Ok(result.unwrap_or((0, 0)))
    }

    /// Whether every outside candidate is preferred over all of `s` by
    /// strictly less than an `alpha` fraction of voters. The comparison
    /// `count < α·n` is an exact integer cross-product.
    pub fn is_alpha_undominated(&self, s: &Committee, alpha: &RationalThreshold) -> Result<bool> {
        self.check_committee(s)?;
        let best = self.best_positions(s);
        let bound = alpha.numerator() as u128 * self.num_voters as u128;
        for a in 1..=self.num_candidates {
            if s.contains(a) {
                continue;
            }
            let count = self.count_dominators(a, &best) as u128;
            if count * alpha.denominator() as u128 >= bound {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The exact stability constant `c*(S) = |S| · max_a |a ≻ S| / n`.
    /// `S` is c-stable exactly for thresholds `c > c*(S)`, so
    /// `is_alpha_undominated(S, α) ⟺ c*(S) < |S|·α`.
    pub fn stability_constant(&self, s: &Committee) -> Result<Fraction> {
        let (_, count) = self.max_domination(s)?;
        Ok(Fraction::new(
            s.size() as u64 * count as u64,
            self.num_voters as u64,
        ))
    }

    /// Total-order comparison of two committees for voter `v`.
    ///
    /// A voter strongly prefers the committee whose favorite member she
    /// ranks higher; with a shared favorite, a superset is weakly preferred,
    /// and otherwise the favorites of the set differences decide. All three
    /// rules coincide with one test: the most-preferred candidate in the
    /// symmetric difference decides for the side containing it, and equal
    /// sets compare equal. That form makes completeness and transitivity
    /// immediate (it is a lexicographic order on membership vectors read in
    /// the voter's preference order).
    pub fn compare_committees(
        &self,
        v: u32,
        first: &Committee,
        second: &Committee,
    ) -> Result<CommitteeOrdering> {
        self.check_voter(v)?;
        self.check_committee(first)?;
        self.check_committee(second)?;
        let idx = v as usize - 1;
        let mut best_first = u32::MAX;
        let mut best_second = u32::MAX;
        let (a, b) = (first.members(), second.members());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i] < b[j]) {
                best_first = best_first.min(self.pos(idx, a[i]));
                i += 1;
            } else if i == a.len() || b[j] < a[i] {
                best_second = best_second.min(self.pos(idx, b[j]));
                j += 1;
            } else {
                // Shared member: not in the symmetric difference.
                i += 1;
                j += 1;
            }
        }
        Ok(if best_first == u32::MAX && best_second == u32::MAX {
            CommitteeOrdering::Equal
        } else if best_first < best_second {
            CommitteeOrdering::FirstAbove
        } else {
            CommitteeOrdering::SecondAbove
        })
    }

    /// Rank of candidate `a` at voter `v` under reference distribution `d`:
    /// the probability of drawing a committee that `a` beats outright
    /// (i.e. `v` prefers `a` over every member).
    pub fn rank_candidate<W: Weight>(
        &self,
        d: &CommitteeDistribution<W>,
        v: u32,
        a: u32,
    ) -> Result<W> {
        self.check_voter(v)?;
        self.check_candidate(a)?;
        let idx = v as usize - 1;
        let pos_a = self.pos(idx, a);
        let mut total = W::zero();
        for (committee, w) in d.support() {
            self.check_committee(committee)?;
            let beats_all = committee
                .members()
                .iter()
                .all(|&c| pos_a < self.pos(idx, c));
            if beats_all {
                total.add_assign(w);
            }
        }
        Ok(total)
    }

    /// Rank of committee `s` at voter `v` under reference distribution `d`:
    /// the probability of drawing a committee that `v` likes no better
    /// than `s`.
    pub fn rank_committee<W: Weight>(
        &self,
        d: &CommitteeDistribution<W>,
        v: u32,
        s: &Committee,
    ) -> Result<W> {
        self.check_voter(v)?;
        self.check_committee(s)?;
        let mut total = W::zero();
        for (committee, w) in d.support() {
            self.check_committee(committee)?;
            match self.compare_committees(v, s, committee)? {
                CommitteeOrdering::FirstAbove | CommitteeOrdering::Equal => total.add_assign(w),
                CommitteeOrdering::SecondAbove => {}
            }
        }
        Ok(total)
    }

    /// The Condorcet dimension: the smallest `k` such that some size-`k`
    /// committee is 1/2-undominated, with the lexicographically smallest
    /// witness of that size. Found by exhaustive search in increasing `k`;
    /// always terminates since the committee of all candidates qualifies.
    ///
    /// Each committee examined costs one node against `node_budget`.
    pub fn condorcet_dimension(&self, node_budget: u64) -> Result<(u32, Committee)> {
        let half = RationalThreshold::half();
        let mut nodes: u64 = 0;
        for k in 1..=self.num_candidates {
            for members in combinations(self.num_candidates, k) {
                nodes += 1;
                if nodes > node_budget {
                    return Err(Error::BudgetExceeded {
                        needed: nodes as u128,
                        budget: node_budget,
                    });
                }
                let committee = Committee { members };
                if self.is_alpha_undominated(&committee, &half)? {
                    return Ok((k, committee));
                }
            }
        }
        unreachable!("the full candidate set is always 1/2-undominated");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profiles::{gen_cyclic, gen_impartial_culture, gen_minimal_dim3};

    use proptest::prelude::*;

    fn committee(ids: &[u32]) -> Committee {
        Committee::new(ids.iter().copied()).unwrap()
    }

    /// The reference distribution over diametric pairs of the 6-cycle:
    /// {1,4} with weight 0.45, {2,5} with 0.35, {3,6} with 0.20.
    fn diametric_distribution() -> CommitteeDistribution<f64> {
        CommitteeDistribution::new(vec![
            (committee(&[1, 4]), 0.45),
            (committee(&[2, 5]), 0.35),
            (committee(&[3, 6]), 0.20),
        ])
        .unwrap()
    }

    fn diametric_distribution_exact() -> CommitteeDistribution<BigRational> {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        CommitteeDistribution::new(vec![
            (committee(&[1, 4]), r(9, 20)),
            (committee(&[2, 5]), r(7, 20)),
            (committee(&[3, 6]), r(1, 5)),
        ])
        .unwrap()
    }

    #[test]
    fn prefers_on_cyclic_profile() {
        let e = gen_cyclic(6);
        assert!(e.prefers(1, 1, 6).unwrap());
        assert!(!e.prefers(1, 3, 3).unwrap());
        assert!(e.prefers(6, 6, 1).unwrap());
        assert!(e.prefers(5, 6, 1).unwrap());
        assert!(matches!(
            e.prefers(7, 1, 2),
            Err(Error::VoterOutOfRange { .. })
        ));
        assert!(matches!(
            e.prefers(1, 9, 2),
            Err(Error::CandidateOutOfRange { .. })
        ));
    }

    #[test]
    fn dominator_counts_on_cyclic_profile() {
        let e = gen_cyclic(6);
        // Candidate 6 beats the singleton {1} for every voter except v1.
        assert_eq!(e.dominator_count(6, &committee(&[1])).unwrap(), 5);
        assert_eq!(e.dominator_count(3, &committee(&[3, 6])).unwrap(), 0);
        assert_eq!(e.dominator_count(1, &committee(&[3, 6])).unwrap(), 1);
    }

    #[test]
    fn max_domination_and_tie_breaks() {
        let e = gen_cyclic(6);
        assert_eq!(e.max_domination(&committee(&[1])).unwrap(), (6, 5));
        // Candidates 2 and 5 both dominate {3,6} at 2 voters; smallest id wins.
        assert_eq!(e.max_domination(&committee(&[3, 6])).unwrap(), (2, 2));
        let single = Election::new(1, vec![vec![1]]).unwrap();
        assert_eq!(single.max_domination(&committee(&[1])).unwrap(), (0, 0));
    }

    #[test]
    fn alpha_undomination_on_cyclic_profile() {
        let e = gen_cyclic(6);
        let half = RationalThreshold::half();
        assert!(e.is_alpha_undominated(&committee(&[3, 6]), &half).unwrap());
        assert!(!e.is_alpha_undominated(&committee(&[1]), &half).unwrap());
        assert!(e
            .is_alpha_undominated(
                &Committee::full(6),
                &RationalThreshold::new(1, 100).unwrap()
            )
            .unwrap());
    }

    #[test]
    fn stability_constants() {
        let e = gen_cyclic(6);
        assert_eq!(
            e.stability_constant(&committee(&[3, 6])).unwrap(),
            Fraction::new(2, 3)
        );
        assert_eq!(
            e.stability_constant(&committee(&[1])).unwrap(),
            Fraction::new(5, 6)
        );
        assert_eq!(
            e.stability_constant(&Committee::full(6)).unwrap(),
            Fraction::new(0, 1)
        );
    }

    #[test]
    fn committee_comparison_follows_the_stated_rules() {
        let e = gen_cyclic(6);
        //

        // Strict favorites: v1 ranks 2 above 3.
        assert_eq!(
            e.compare_committees(1, &committee(&[2, 5]), &committee(&[3, 6]))
                .unwrap(),
            CommitteeOrdering::FirstAbove
        );
        // Shared favorite, subset rule: the superset is weakly preferred.
        assert_eq!(
            e.compare_committees(1, &committee(&[1, 4]), &committee(&[1]))
                .unwrap(),
            CommitteeOrdering::FirstAbove
        );
        assert_eq!(
            e.compare_committees(1, &committee(&[1]), &committee(&[1, 4]))
                .unwrap(),
            CommitteeOrdering::SecondAbove
        );
        // Shared favorite, disjoint remainders: favorites of the differences.
        assert_eq!(
            e.compare_committees(1, &committee(&[1, 3]), &committee(&[1, 5]))
                .unwrap(),
            CommitteeOrdering::FirstAbove
        );
        assert_eq!(
            e.compare_committees(1, &committee(&[2, 4]), &committee(&[2, 4]))
                .unwrap(),
            CommitteeOrdering::Equal
        );
    }

    #[test]
    fn ranks_match_reference_distribution() {
        let e = gen_cyclic(6);
        let d = diametric_distribution();
        assert!((e.rank_candidate(&d, 1, 1).unwrap() - 0.55).abs() < 1e-15);
        assert_eq!(e.rank_candidate(&d, 2, 1).unwrap(), 0.0);
        let point = CommitteeDistribution::<f64>::point_mass(committee(&[4]));
        assert_eq!(e.rank_candidate(&point, 2, 4).unwrap(), 0.0);

        assert!((e.rank_committee(&d, 2, &committee(&[3, 6])).unwrap() - 0.65).abs() < 1e-15);
        assert!((e.rank_committee(&d, 1, &committee(&[3, 6])).unwrap() - 0.20).abs() < 1e-15);
        let s = committee(&[2, 5]);
        let point = CommitteeDistribution::<f64>::point_mass(s.clone());
        assert_eq!(e.rank_committee(&point, 3, &s).unwrap(), 1.0);
    }

    #[test]
    fn rank_sums_match_block_picture_exactly() {
        // The three lowest committee ranks of {3,6} total 21/20 = 1.05 and
        // the three highest candidate ranks of 1 total 9/10 = 0.90.
        let e = gen_cyclic(6);
        let d = diametric_distribution_exact();
        let s = committee(&[3, 6]);
        let mut committee_ranks: Vec<BigRational> = (1..=6)
            .map(|v| e.rank_committee(&d, v, &s).unwrap())
            .collect();
        committee_ranks.sort();
        let bottom3: BigRational = committee_ranks[..3].iter().cloned().sum();
        assert_eq!(bottom3, BigRational::new(21.into(), 20.into()));

        let mut cand_ranks: Vec<BigRational> = (1..=6)
            .map(|v| e.rank_candidate(&d, v, 1).unwrap())
            .collect();
        cand_ranks.sort();
        cand_ranks.reverse();
        let top3: BigRational = cand_ranks[..3].iter().cloned().sum();
        assert_eq!(top3, BigRational::new(9.into(), 10.into()));
    }

    #[test]
    fn condorcet_dimension_of_known_instances() {
        let (k, witness) = gen_cyclic(6).condorcet_dimension(1_000_000).unwrap();
        assert_eq!(k, 2);
        assert_eq!(witness, committee(&[1, 4]));

        let single = Election::new(4, vec![vec![3, 1, 4, 2]]).unwrap();
        let (k, witness) = single.condorcet_dimension(1_000).unwrap();
        assert_eq!((k, witness), (1, committee(&[3])));

        let (k, _) = gen_minimal_dim3().condorcet_dimension(1_000_000).unwrap();
        assert_eq!(k, 3);
    }

    #[test]
    fn condorcet_dimension_budget_error() {
        let e = gen_cyclic(6);
        assert!(matches!(
            e.condorcet_dimension(3),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn undomination_iff_stability_below_size_times_alpha() {
        // is_alpha_undominated(e, S, α) ⟺ c*(S) < |S|·α, exactly.
        let e = gen_minimal_dim3();
        for alpha in [
            RationalThreshold::new(1, 3).unwrap(),
            RationalThreshold::half(),
            RationalThreshold::new(2, 3).unwrap(),
            RationalThreshold::one(),
        ] {
            for k in 1..=3u32 {
                for members in crate::combinatorics::combinations(6, k) {
                    let s = Committee { members };
                    let undominated = e.is_alpha_undominated(&s, &alpha).unwrap();
                    let c_star = e.stability_constant(&s).unwrap();
                    let bound =
                        Fraction::new(s.size() as u64 * alpha.numerator(), alpha.denominator());
                    assert_eq!(undominated, c_star < bound, "S={s} alpha={alpha}");
                }
            }
        }
    }

    #[test]
    fn dimension_witness_is_minimal_and_passes() {
        // Independent brute-force oracle over a few impartial-culture draws.
        for seed in 0..6u64 {
            let e = gen_impartial_culture(12, 5, seed);
            let (k, witness) = e.condorcet_dimension(1_000_000).unwrap();
            let half = RationalThreshold::half();
            assert!(e.is_alpha_undominated(&witness, &half).unwrap());
            for smaller in 1..k {
                for members in crate::combinatorics::combinations(5, smaller) {
                    let s = Committee { members };
                    assert!(
                        !e.is_alpha_undominated(&s, &half).unwrap(),
                        "seed {seed}: {s} of size {smaller} beats the witness size {k}"
                    );
                }
            }
        }
    }

    #[test]
    fn blocks_picture_cumulative_sums() {
        // For each voter, support committees sorted by her order carry
        // cumulative weights, and rank_committee reads off the block tops.
        let e = gen_cyclic(6);
        let d = diametric_distribution();
        for v in 1..=6u32 {
            let mut support: Vec<(Committee, f64)> = d.support().to_vec();
            support.sort_by(|x, y| match e.compare_committees(v, &x.0, &y.0).unwrap() {
                CommitteeOrdering::SecondAbove => std::cmp::Ordering::Less,
                CommitteeOrdering::FirstAbove => std::cmp::Ordering::Greater,
                CommitteeOrdering::Equal => std::cmp::Ordering::Equal,
            });
            let mut cumulative = 0.0;
            for (s, w) in &support {
                cumulative += w;
                let rank = e.rank_committee(&d, v, s).unwrap();
                assert!((rank - cumulative).abs() < 1e-12, "v={v} S={s}");
            }
            assert!((cumulative - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn threshold_parsing_and_arithmetic() {
        let alpha: RationalThreshold = "3/6".parse().unwrap();
        assert_eq!((alpha.numerator(), alpha.denominator()), (1, 2));
        assert_eq!(alpha.floor_times(7), 3);
        assert!(alpha.times_is_integral(6));
        assert!(!alpha.times_is_integral(7));
        assert!("0/4".parse::<RationalThreshold>().is_err());
        assert!("5/4".parse::<RationalThreshold>().is_err());
        assert!("0.5".parse::<RationalThreshold>().is_err());
    }

    proptest! {
        /// Rank monotonicity: if a ≻_v S then rank_v(a) ≥ rank_v(S).
        #[test]
        fn rank_monotonicity(
            seed in 0u64..500,
            n in 1u32..8,
            m in 2u32..6,
        ) {
            let e = gen_impartial_culture(n, m, seed);
            let mut rng = crate::rng::SplitMix64::new(seed ^ 0xABCD);
            // Random support of distinct committees with random weights.
            let mut support = std::collections::BTreeMap::new();
            for _ in 0..3 {
                let size = 1 + rng.next_below(m as u64) as u32;
                let mut ids: Vec<u32> = (1..=m).collect();
                rng.shuffle(&mut ids);
                let c = Committee::new(ids.into_iter().take(size as usize)).unwrap();
                support.insert(c, 1.0 + rng.next_below(5) as f64);
            }
            let total: f64 = support.values().sum();
            let d = CommitteeDistribution::new(
                support.into_iter().map(|(c, w)| (c, w / total)).collect(),
            ).unwrap();
            for v in 1..=n {
                for a in 1..=m {
                    for (s, _) in d.support() {
                        let beats_all = s.members().iter().all(|&c| {
                            c != a && e.prefers(v, a, c).unwrap()
                        });
                        if beats_all {
                            let ra = e.rank_candidate(&d, v, a).unwrap();
                            let rs = e.rank_committee(&d, v, s).unwrap();
                            prop_assert!(ra >= rs - 1e-12, "v={v} a={a} S={s} ra={ra} rs={rs}");
                        }
                    }
                }
            }
        }

        /// compare_committees is a complete antisymmetric transitive order
        /// with Equal exactly on set equality.
        #[test]
        fn committee_order_is_total(seed in 0u64..300, n in 1u32..6) {
            let m = 4u32;
            let e = gen_impartial_culture(n, m, seed);
            let mut committees = Vec::new();
            for k in 1..=m {
                for members in crate::combinatorics::combinations(m, k) {
                    committees.push(Committee { members });
                }
            }
            for v in 1..=n {
                for x in &committees {
                    for y in &committees {
                        let xy = e.compare_committees(v, x, y).unwrap();
                        let yx = e.compare_committees(v, y, x).unwrap();
                        match xy {
                            CommitteeOrdering::Equal => {
                                prop_assert_eq!(x, y);
                                prop_assert_eq!(yx, CommitteeOrdering::Equal);
                            }
                            CommitteeOrdering::FirstAbove => {
                                prop_assert_eq!(yx, CommitteeOrdering::SecondAbove)
                            }
                            CommitteeOrdering::SecondAbove => {
                                prop_assert_eq!(yx, CommitteeOrdering::FirstAbove)
                            }
                        }
                        for z in &committees {
                            let yz = e.compare_committees(v, y, z).unwrap();
                            if xy == CommitteeOrdering::FirstAbove
                                && yz == CommitteeOrdering::FirstAbove
                            {
                                prop_assert_eq!(
                                    e.compare_committees(v, x, z).unwrap(),
                                    CommitteeOrdering::FirstAbove
                                );
                            }
                        }
                    }
                }
            }
        }
    }
}
