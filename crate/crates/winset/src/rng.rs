//! Seedable deterministic random generation.
//!
//! Everything random in this crate (impartial-culture profiles, committee
//! sampling) flows through [`SplitMix64`], so identical seeds reproduce
//! identical outputs on every platform and in any reimplementation. The
//! generator is Steele, Lea and Flood's SplitMix64; bounded draws use
//! rejection sampling so they are exactly uniform, and shuffles are
//! Fisher–Yates from the top index down. The exact procedures are documented
//! on each method.

/// SplitMix64 pseudo-random generator.
///
/// State update: `s += 0x9E3779B97F4A7C15`; output mixes the new state with
/// two xor-shift-multiply rounds (`0xBF58476D1CE4E5B9`, `0x94D049BB133111EB`)
/// and a final `z ^ (z >> 31)`.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform draw from `0..bound` by rejection: draws whose value exceeds
    /// the largest multiple of `bound` below 2^64 are discarded, so every
    /// residue is equally likely.
    pub fn next_below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "bound must be positive");
        // 2^64 mod bound, computed without overflowing u64
        let rem = (u64::MAX % bound).wrapping_add(1) % bound;
        let limit = u64::MAX - rem;
        loop {
            let x = self.next_u64();
            if x <= limit {
                return x % bound;
            }
        }
    }

    /// Uniform `f64` in `[0, 1)` from the top 53 bits of one draw.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// In-place Fisher–Yates shuffle: for `i` from `len-1` down to `1`,
    /// swap positions `i` and `next_below(i + 1)`.
    pub fn shuffle<T>(&mut self, xs: &mut [T]) {
        for i in (1..xs.len()).rev() {
            let j = self.next_below(i as u64 + 1) as usize;
            xs.swap(i, j);
        }
    }
}
