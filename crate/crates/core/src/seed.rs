//! Seed discipline: every random consumer gets its own ChaCha stream.
//!
//! A child seed is the first word of the ChaCha8 stream numbered `index`
//! under the parent seed, so `master -> replicate -> partition` seeds form a
//! tree that does not depend on execution order.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type SimRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SimRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Seed of the `index`-th substream below `parent`.
pub fn derive_seed(parent: u64, index: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(parent);
    rng.set_stream(index);
    rng.next_u64()
}
