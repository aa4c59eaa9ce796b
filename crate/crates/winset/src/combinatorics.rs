//! Lexicographic enumeration helpers used by the exhaustive searches.

/// Binomial coefficient C(m, k), saturating at `u128::MAX`.
pub(crate) fn binomial(m: u32, k: u32) -> u128 {
    if k > m {
        return 0;
    }
    let k = k.min(m - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((m - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Iterator over the k-subsets of `{1, …, m}` in lexicographic order.
pub(crate) fn combinations(m: u32, k: u32) -> Combinations {
    let current = if k >= 1 && k <= m {
        Some((1..=k).collect())
    } else {
        None
    };
    Combinations { m, k, current }
}

pub(crate) struct Combinations {
    m: u32,
    k: u32,
    current: Option<Vec<u32>>,
}

impl Iterator for Combinations {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let current = self.current.as_mut()?;
        let item = current.clone();
        let k = self.k as usize;
        // Find the rightmost position that can still be incremented.
        let mut i = k;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if current[i] < self.m - (k - 1 - i) as u32 {
                current[i] += 1;
                for j in i + 1..k {
                    current[j] = current[j - 1] + 1;
                }
                break;
            }
        }
        Some(item)
    }
}

/// Iterator over all permutations of `{1, …, m}` in lexicographic order.
pub(crate) fn lex_permutations(m: u32) -> LexPermutations {
    LexPermutations {
        current: Some((1..=m).collect()),
    }
}

pub(crate) struct LexPermutations {
    current: Option<Vec<u32>>,
}

impl Iterator for LexPermutations {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let current = self.current.as_mut()?;
        let item = current.clone();
        // Standard next-permutation step.
        let n = current.len();
        let mut i = n.saturating_sub(1);
        while i > 0 && current[i - 1] >= current[i] {
            i -= 1;
        }
        if i == 0 {
            self.current = None;
        } else {
            let mut j = n - 1;
            while current[j] <= current[i - 1] {
                j -= 1;
            }
            current.swap(i - 1, j);
            current[i..].reverse();
        }
        Some(item)
    }
}
