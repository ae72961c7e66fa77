//! Seeded random streams.
//!
//! Every random draw in the crate comes from a [`StreamRng`], which is ChaCha
//! with 8 rounds (`rand_chacha::ChaCha8Rng`). A stream is keyed from a 64-bit
//! seed through `SeedableRng::seed_from_u64`, which expands the seed with
//! PCG32 into the 256-bit ChaCha key. Both algorithms are fixed and portable,
//! so identical seeds give identical bits on every platform.
//!
//! Independent sub-streams (one per replicate, per permutation, per direction
//! of the symmetrized statistic) are addressed by [`derive_seed`], a
//! SplitMix64-style mix of the parent seed and an index. Work items derive
//! their seed from their index alone, never from scheduling order, so
//! parallel and serial runs draw the same numbers.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 20_190_910;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 output finalizer.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of sub-stream `index` under `seed`.
#[inline]
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    mix64(seed ^ mix64(index.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)))
}

pub fn stream(seed: u64) -> StreamRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Draws `U[lo, hi)` as `lo + (hi - lo) * u` with `u` the 53-bit uniform on `[0, 1)`.
#[inline]
pub fn uniform(rng: &mut StreamRng, lo: f64, hi: f64) -> f64 {
    use rand::Rng;
    lo + (hi - lo) * rng.random::<f64>()
}

/// Standard normal deviate (Ziggurat method of `rand_distr::StandardNormal`).
#[inline]
pub fn standard_normal(rng: &mut StreamRng) -> f64 {
    use rand::Rng;
    rng.sample(rand_distr::StandardNormal)
}
