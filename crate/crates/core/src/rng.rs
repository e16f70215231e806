//! Deterministic, stream-splittable randomness.
//!
//! Every stochastic operation takes an explicit 64-bit seed. Independent work
//! units (Monte Carlo samples, optimizer restarts) each draw from their own
//! counter-derived stream, so results do not depend on scheduling or thread
//! count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Master generator for a given seed.
pub fn master(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream `index` of the generator family identified by `seed`.
pub fn substream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}
