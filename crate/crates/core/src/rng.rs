//! Seed derivation.
//!
//! Every random stream in the crate is a `ChaCha8Rng`. Trial seeds are derived
//! with [`derive_seed`], a SplitMix64 finalizer applied to
//! `base_seed + GOLDEN * (index + 1)`, so trial `i` of a batch can be
//! reconstructed without replaying trials `0..i`. [`substream`] gives an
//! independent ChaCha stream (stream id = index) under one 64-bit seed.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The generator used everywhere.
pub type StreamRng = ChaCha8Rng;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 output function.
#[inline]
pub fn splitmix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Pure function of `(base_seed, index)`.
#[inline]
pub fn derive_seed(base_seed: u64, index: u64) -> u64 {
    splitmix64(base_seed.wrapping_add(GOLDEN.wrapping_mul(index.wrapping_add(1))))
}

pub fn rng_from_seed(seed: u64) -> StreamRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// ChaCha stream `index` under key `seed`.
pub fn substream(seed: u64, index: u64) -> StreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}
