//! Seeded, portable pseudo-randomness for reproducible set generation.
//!
//! The generator is SplitMix64 (Steele, Lea and Flood): a 64-bit counter
//! advanced by the golden-ratio increment, finalized by two
//! xor-shift-multiply rounds. The full state is one `u64`, the algorithm is
//! published, and identical seeds produce identical streams on every
//! platform, which is what makes experiment records reproducible
//! byte-for-byte.

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1) using the top 53 bits, the standard double
    /// conversion.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in [0, bound) by rejection-free modulo; bias is irrelevant at
    /// the bounds used here (copy arities, never cryptography).
    pub fn next_below(&mut self, bound: usize) -> usize {
        debug_assert!(bound > 0);
        (self.next_u64() % bound as u64) as usize
    }
}

/// The `stream`-th output of `SplitMix64::new(seed)`, computed in closed
/// form. Substreams (one per set, per trial) get stable names this way:
/// `derived_seed(s, j)` never depends on how many draws other substreams
/// consumed.
pub fn derived_seed(seed: u64, stream: u64) -> u64 {
    let mut rng = SplitMix64 {
        state: seed.wrapping_add(GOLDEN.wrapping_mul(stream)),
    };
    rng.next_u64()
}
