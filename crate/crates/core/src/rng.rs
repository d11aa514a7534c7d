//! The one random number generator used everywhere in the crate.
//!
//! ChaCha8 has a fixed, platform-independent output stream, and every draw
//! goes through `u64`/`f64` so results never depend on `usize` width.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type WalkRng = ChaCha8Rng;

pub fn from_seed(seed: u64) -> WalkRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform index in `0..n`. `n` must be positive.
#[inline]
pub fn index<R: Rng + ?Sized>(rng: &mut R, n: usize) -> usize {
    rng.random_range(0..n as u64) as usize
}

/// SplitMix64 finalizer.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Counter-based child seed: `mix64(mix64(master ^ mix64(stream)) + counter)`.
///
/// Child `counter` of a stream can be recomputed without generating the others.
pub fn derive_seed(master: u64, stream: u64, counter: u64) -> u64 {
    mix64(mix64(master ^ mix64(stream)).wrapping_add(counter))
}
