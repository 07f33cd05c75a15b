//! Deterministic RNG stream derivation.
//!
//! Every stochastic component in the crate draws from a ChaCha8 stream whose
//! 64-bit seed is derived from the run seed and a stream index. Deriving
//! streams instead of sharing one generator keeps components order-independent:
//! tree 7 of a forest sees the same draws whether trees are trained
//! sequentially or in parallel.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Mixes a seed with a stream index into an independent 64-bit seed.
///
/// SplitMix64 finalizer over the sum; a single bit flipped in either input
/// avalanches across the output, so adjacent indices yield unrelated streams.
pub fn mix64(seed: u64, index: u64) -> u64 {
    let mut z = seed
        .wrapping_add(index.wrapping_mul(0x9e37_79b9_7f4a_7c15))
        .wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derives the ChaCha8 stream for (`seed`, `index`).
pub fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(mix64(seed, index))
}

/// Uniform sample of `k` indices from `0..m` without replacement: the first
/// `k` steps of a Fisher-Yates shuffle. Consumes exactly `k` range draws, so
/// RNG transcripts in tests can replay the exact draw sequence.
pub fn sample_indices<R: rand::Rng + ?Sized>(rng: &mut R, m: usize, k: usize) -> alloc::vec::Vec<usize> {
    debug_assert!(k <= m);
    let mut pool: alloc::vec::Vec<usize> = (0..m).collect();
    for i in 0..k {
        let j = rng.gen_range(i..m);
        pool.swap(i, j);
    }
    pool.truncate(k);
    pool
}
