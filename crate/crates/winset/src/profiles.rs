//! Plain-text election profiles and the standard instance families.
//!
//! # Profile format
//!
//! ```text
//! # comments start with '#'
//! 6 6            <- header: <num_candidates> <num_voters>
//! 1 2 3 4 5 6    <- one voter per line, most-preferred candidate first
//! 2 3 4 5 6 1
//! w 4 3 4 5 6 1 2   <- "w <count>" prefix clones this voter <count> times
//! ```
//!
//! Every body line must be a permutation of `1..=m`; the body line count
//! after replication must equal the header's voter count. Input accepts LF
//! or CRLF line endings; output is canonical: header, then one uncompressed
//! ranking per line, single spaces, LF endings. `parse ∘ serialize` is the
//! identity on elections, and `serialize ∘ parse` canonicalizes valid text.
//!
//! The `w` prefix exists because cloning voters never changes which
//! committees are undominated, so large electorates compress well.

use crate::combinatorics::lex_permutations;
use crate::election::Election;
use crate::error::{Error, Result};
use crate::rng::SplitMix64;

/// Parses the plain-text profile format described in the module docs.
pub fn parse_election(text: &str) -> Result<Election> {
    let mut header: Option<(u32, u64)> = None;
    let mut rankings: Vec<Vec<u32>> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match header {
            None => {
                let mut it = line.split_whitespace();
                let m = it.next().and_then(|s| s.parse::<u32>().ok());
                let n = it.next().and_then(|s| s.parse::<u64>().ok());
                match (m, n, it.next()) {
                    (Some(m), Some(n), None) if m >= 1 && n >= 1 => header = Some((m, n)),
                    _ => return Err(Error::MalformedHeader { line: line_no }),
                }
            }
            Some((m, _)) => {
                let mut tokens: Vec<&str> = line.split_whitespace().collect();
                let mut copies: u64 = 1;
                if tokens.first() == Some(&"w") {
                    copies = tokens
                        .get(1)
                        .and_then(|s| s.parse().ok())
                        .filter(|&c| c >= 1)
                        .ok_or_else(|| Error::MalformedRanking {
                            line: line_no,
                            reason: "bad replication count after 'w'".into(),
                        })?;
                    tokens.drain(..2);
                }
                let ranking = parse_ranking(&tokens, m, line_no)?;
                for _ in 0..copies {
                    rankings.push(ranking.clone());
                }
            }
        }
    }
    let (m, n) = header.ok_or(Error::EmptyProfile)?;
    if rankings.len() as u64 != n {
        return Err(Error::CountMismatch {
            expected: n,
            found: rankings.len() as u64,
        });
    }
    Election::new(m, rankings)
}

fn parse_ranking(tokens: &[&str], m: u32, line_no: usize) -> Result<Vec<u32>> {
    if tokens.len() != m as usize {
        return Err(Error::MalformedRanking {
            line: line_no,
            reason: format!("expected {} candidates, found {}", m, tokens.len()),
        });
    }
    let mut seen = vec![false; m as usize];
    let mut ranking = Vec::with_capacity(m as usize);
    for tok in tokens {
        let c: u32 = tok.parse().map_err(|_| Error::MalformedRanking {
            line: line_no,
            reason: format!("not a candidate id: {tok:?}"),
        })?;
        if c == 0 || c > m {
            return Err(Error::MalformedRanking {
                line: line_no,
                reason: format!("candidate {c} out of range 1..={m}"),
            });
        }
        if seen[c as usize - 1] {
            return Err(Error::MalformedRanking {
                line: line_no,
                reason: format!("candidate {c} listed twice"),
            });
        }
        seen[c as usize - 1] = true;
        ranking.push(c);
    }
    Ok(ranking)
}

/// Writes the canonical text form: `parse_election(serialize_election(e))`
/// reproduces `e` bit-exactly.
pub fn serialize_election(e: &Election) -> String {
    let mut out = String::new();
    out.push_str(&format!("{} {}\n", e.num_candidates(), e.num_voters()));
    for v in 1..=e.num_voters() {
        let ranking = e.ranking(v).expect("voter in range");
        let line: Vec<String> = ranking.iter().map(|c| c.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// The cyclic profile: `n = m` voters where voter `i` ranks
/// `i, i+1, …, m, 1, …, i−1`. For every candidate there is another that all
/// but one voter prefer, so no small threshold admits a singleton winner.
pub fn gen_cyclic(m: u32) -> Election {
    assert!(m >= 1, "need at least one candidate");
    let rankings = (0..m)
        .map(|i| (0..m).map(|j| (i + j) % m + 1).collect())
        .collect();
    Election::new(m, rankings).expect("cyclic profile is valid")
}

/// The product of an `s`-cycle and a `t`-cycle: `n = m = s·t`, with voters
/// and candidates indexed by tuples `(p, q) ∈ [s]×[t]` mapped to id
/// `p·t + q + 1`. Voter `(p, q)` ranks candidate `(x, y)` by ascending
/// `(x − p) mod s`, then ascending `(y − q) mod t`.
///
/// With `s = k + 1`, every size-`k` committee leaves some candidate
/// preferred over it by at least a `(2/(k+1))(1 − 1/t)` fraction of voters,
/// which makes these the standard lower-bound instances.
pub fn gen_cycle_product(s: u32, t: u32) -> Result<Election> {
    if s < 2 || t < 2 {
        return Err(Error::InvalidParameter(
            "cycle product needs both factors >= 2".into(),
        ));
    }
    let m = s
        .checked_mul(t)
        .filter(|&m| m <= 10_000)
        .ok_or(Error::BudgetExceeded {
            needed: s as u128 * t as u128,
            budget: 10_000,
        })?;
    let mut rankings = Vec::with_capacity(m as usize);
    for p in 0..s {
        for q in 0..t {
            let mut ranking = Vec::with_capacity(m as usize);
            for dx in 0..s {
                let x = (p + dx) % s;
                for dy in 0..t {
                    let y = (q + dy) % t;
                    ranking.push(x * t + y + 1);
                }
            }
            rankings.push(ranking);
        }
    }
    Election::new(m, rankings)
}

/// The smallest election with Condorcet dimension 3: 6 voters over 6
/// candidates, two interleaved 3-cycles. Hard-coded.
pub fn gen_minimal_dim3() -> Election {
    let rankings = vec![
        vec![1, 4, 2, 3, 6, 5],
        vec![2, 5, 3, 1, 4, 6],
        vec![3, 6, 1, 2, 5, 4],
        vec![4, 3, 6, 1, 2, 5],
        vec![5, 1, 4, 2, 3, 6],
        vec![6, 2, 5, 3, 1, 4],
    ];
    Election::new(6, rankings).expect("fixed profile is valid")
}

/// Impartial culture: `n` independent uniformly random rankings.
///
/// Randomness is a single [`SplitMix64`](crate::rng::SplitMix64) stream
/// seeded with `seed`; voter rankings are produced in voter order by
/// Fisher–Yates shuffling the identity permutation `1..=m` (see
/// [`crate::rng`] for the exact procedure). Identical `(n, m, seed)` triples
/// therefore give identical elections on every platform.
pub fn gen_impartial_culture(n: u32, m: u32, seed: u64) -> Election {
    assert!(n >= 1 && m >= 1, "need at least one voter and candidate");
    let mut rng = SplitMix64::new(seed);
    let rankings = (0..n)
        .map(|_| {
            let mut perm: Vec<u32> = (1..=m).collect();
            rng.shuffle(&mut perm);
            perm
        })
        .collect();
    Election::new(m, rankings).expect("shuffled permutations are valid")
}

/// The full factorial profile: one voter per permutation of `1..=m`, in
/// lexicographic order (`n = m!`). Rejects `m > 7`.
pub fn gen_full_factorial(m: u32) -> Result<Election> {
    if m == 0 {
        return Err(Error::InvalidParameter(
            "need at least one candidate".into(),
        ));
    }
    if m > 7 {
        let needed = (1..=m as u128).product();
        return Err(Error::BudgetExceeded {
            needed,
            budget: 5040,
        });
    }
    let rankings: Vec<Vec<u32>> = lex_permutations(m).collect();
    Election::new(m, rankings)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::election::Committee;
    use proptest::prelude::*;

    #[test]
    fn cyclic_matches_reference_profile() {
        let e = gen_cyclic(6);
        assert_eq!(e.ranking(1).unwrap(), &[1, 2, 3, 4, 5, 6]);
        assert_eq!(e.ranking(6).unwrap(), &[6, 1, 2, 3, 4, 5]);
        let single = gen_cyclic(1);
        assert_eq!(single.ranking(1).unwrap(), &[1]);
        // Every candidate has another preferred by all but one voter.
        for m in 3..=8u32 {
            let e = gen_cyclic(m);
            for a in 1..=m {
                let s = Committee::new([a]).unwrap();
                let found = (1..=m).any(|b| b != a && e.dominator_count(b, &s).unwrap() == m - 1);
                assert!(found, "m={m} a={a}");
            }
        }
    }

    #[test]
    fn serialize_then_parse_is_identity() {
        let e = gen_cyclic(6);
        let text = serialize_election(&e);
        assert!(text.starts_with("6 6\n1 2 3 4 5 6\n"));
        assert_eq!(parse_election(&text).unwrap(), e);

        let tiny = Election::new(1, vec![vec![1]]).unwrap();
        assert_eq!(serialize_election(&tiny), "1 1\n1\n");

        let prod = gen_cycle_product(3, 5).unwrap();
        let text = serialize_election(&prod);
        assert_eq!(serialize_election(&parse_election(&text).unwrap()), text);
    }

    #[test]
    fn parse_error_cases() {
        assert!(matches!(parse_election(""), Err(Error::EmptyProfile)));
        assert!(matches!(
            parse_election("# only a comment\n"),
            Err(Error::EmptyProfile)
        ));
        let err = parse_election("3 2\n1 2 3\n1 1 3\n").unwrap_err();
        assert!(
            matches!(err, Error::MalformedRanking { line: 3, .. }),
            "{err}"
        );
        assert!(matches!(
            parse_election("3 2\n1 2 3\n"),
            Err(Error::CountMismatch {
                expected: 2,
                found: 1
            })
        ));
        assert!(matches!(
            parse_election("x y\n"),
            Err(Error::MalformedHeader { line: 1 })
        ));
    }

    #[test]
    fn replication_prefix_and_crlf() {
        let e = parse_election("# weighted\r\n2 5\r\nw 4 1 2\r\n2 1\r\n").unwrap();
        assert_eq!(e.num_voters(), 5);
        assert_eq!(e.ranking(4).unwrap(), &[1, 2]);
        assert_eq!(e.ranking(5).unwrap(), &[2, 1]);
        assert!(parse_election("2 2\nw 0 1 2\n2 1\n").is_err());
    }

    #[test]
    fn cycle_product_structure() {
        let e = gen_cycle_product(3, 5).unwrap();
        assert_eq!((e.num_candidates(), e.num_voters()), (15, 15));
        // Voter (0,0) ranks candidates in id order; voter (0,1) shifts the
        // second coordinate.
        assert_eq!(e.ranking(1).unwrap(), &(1..=15).collect::<Vec<u32>>()[..]);
        assert_eq!(
            e.ranking(2).unwrap(),
            &[2, 3, 4, 5, 1, 7, 8, 9, 10, 6, 12, 13, 14, 15, 11]
        );

        let small = gen_cycle_product(3, 2).unwrap();
        // Voter (0,0): x-blocks in order 0,1,2, each cycled from y=0.
        assert_eq!(small.ranking(1).unwrap(), &[1, 2, 3, 4, 5, 6]);
        assert!(gen_cycle_product(1, 5).is_err());
    }

    #[test]
    fn cycle_product_domination_floor() {
        // With s = k+1 = 3, t = 5: every size-2 committee is dominated by a
        // (2/3)(1 − 1/5) = 8/15 fraction, so nothing passes below that.
        let e = gen_cycle_product(3, 5).unwrap();
        let n = e.num_voters();
        for members in crate::combinatorics::combinations(15, 2) {
            let s = Committee::new(members).unwrap();
            let (_, count) = e.max_domination(&s).unwrap();
            assert!(count as u64 * 15 >= 8 * n as u64, "S={s} count={count}");
        }
    }

    #[test]
    fn impartial_culture_is_seed_deterministic() {
        let a = gen_impartial_culture(12, 5, 7);
        let b = gen_impartial_culture(12, 5, 7);
        assert_eq!(a, b);
        let c = gen_impartial_culture(12, 5, 8);
        assert_ne!(a, c);
        let single = gen_impartial_culture(1, 5, 3);
        assert_eq!(single.condorcet_dimension(100).unwrap().0, 1);
    }

    #[test]
    fn impartial_culture_dimension_matches_brute_force() {
        let e = gen_impartial_culture(12, 5, 7);
        let (k, witness) = e.condorcet_dimension(1_000_000).unwrap();
        // Oracle: first k whose lexicographically smallest passing committee
        // exists, scanning all sizes from 1.
        let half = crate::election::RationalThreshold::half();
        let mut oracle = None;
        'outer: for size in 1..=5u32 {
            for members in crate::combinatorics::combinations(5, size) {
                let s = Committee::new(members).unwrap();
                if e.is_alpha_undominated(&s, &half).unwrap() {
                    oracle = Some((size, s));
                    break 'outer;
                }
            }
        }
        assert_eq!(Some((k, witness)), oracle);
    }

    #[test]
    fn full_factorial_sizes() {
        assert_eq!(gen_full_factorial(3).unwrap().num_voters(), 6);
        assert_eq!(gen_full_factorial(1).unwrap().num_voters(), 1);
        assert!(matches!(
            gen_full_factorial(8),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn minimal_dim3_profile_shape() {
        let e = gen_minimal_dim3();
        assert_eq!((e.num_candidates(), e.num_voters()), (6, 6));
        assert_eq!(e.ranking(1).unwrap(), &[1, 4, 2, 3, 6, 5]);
    }

    proptest! {
        /// Round-trip: parse ∘ serialize is the identity on elections.
        #[test]
        fn profile_round_trip(seed in 0u64..1000, n in 1u32..10, m in 1u32..8) {
            let e = gen_impartial_culture(n, m, seed);
            let parsed = parse_election(&serialize_election(&e)).unwrap();
            prop_assert_eq!(parsed, e);
        }
    }
}
