//! Deterministic, splittable random number streams.
//!
//! Every randomized operation in the crate derives its generators through
//! [`stream`]: a SplitMix64 hash absorbs the user seed plus a label path
//! (subcommand tag, trial index, generation, sample index, ...) and expands
//! to a 256-bit ChaCha8 key. Streams for distinct paths are independent for
//! all practical purposes, and a parallel map that derives one stream per
//! output index is reproducible regardless of thread count or schedule.
//!
//! [`ALGORITHM`] names the scheme; it is stamped into every run manifest so
//! outputs can be tied to the generator that produced them.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Identifier of the stream-derivation scheme, recorded in run manifests.
pub const ALGORITHM: &str = "splitmix64-chacha8/v1";

#[inline]
fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derive the generator for `(seed, path)`.
///
/// The path is a sequence of labels identifying the consumer, e.g.
/// `&[tag, trial]` or `&[tag, generation, sample]`.
pub fn stream(seed: u64, path: &[u64]) -> ChaCha8Rng {
    let mut state = seed ^ 0x5851_f42d_4c95_7f2d;
    splitmix64(&mut state);
    for &label in path {
        state ^= label.wrapping_mul(0x2545_f491_4f6c_dd1d);
        splitmix64(&mut state);
    }
    let mut key = [0u8; 32];
    for chunk in key.chunks_exact_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    ChaCha8Rng::from_seed(key)
}

/// Collapse `(seed, path)` into a single sub-seed, for handing a derived
/// seed to an operation that does its own stream derivation.
pub fn derive(seed: u64, path: &[u64]) -> u64 {
    use rand::Rng;
    stream(seed, path).gen()
}

/// Stream labels, one per consumer, so independent operations sharing a
/// user seed never collide.
pub mod tag {
    pub const FORMULA: u64 = 1;
    pub const COUPLED: u64 = 2;
    pub const GW_TREE: u64 = 3;
    pub const DE_STEP: u64 = 4;
    pub const BETHE_MC: u64 = 5;
    pub const SOFT_MC: u64 = 6;
    pub const ASS: u64 = 7;
}
