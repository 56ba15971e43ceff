//! Counter-based random streams.
//!
//! A stream is a ChaCha8 generator keyed by `(seed, domain, key)` and
//! positioned on ChaCha stream `index`, so any unit of work can draw its
//! numbers without knowing which thread, or in which order, other units ran.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Monte Carlo orthant estimates.
pub const DOMAIN_ORTHANT: u64 = 0x6f72_7468;
/// Frame-error simulation noise.
pub const DOMAIN_CHANNEL: u64 = 0x6368_616e;

pub fn stream(seed: u64, domain: u64, key: u64, index: u64) -> ChaCha8Rng {
    let mut material = [0u8; 32];
    material[..8].copy_from_slice(&seed.to_le_bytes());
    material[8..16].copy_from_slice(&domain.to_le_bytes());
    material[16..24].copy_from_slice(&key.to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(material);
    rng.set_stream(index);
    rng
}
