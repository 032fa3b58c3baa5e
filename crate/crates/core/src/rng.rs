//! Counter-based random streams.
//!
//! Every random object (an RR-set, a simulation run, an estimation corpus) draws
//! from its own ChaCha stream addressed by `(master_seed, domain, index)`. The
//! result is independent of how work is split across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Stream domains. Distinct domains never share a key stream for the same master seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Domain {
    Corpus = 1,
    KptEstimation = 2,
    KptRefinement = 3,
    Simulation = 4,
    Profiles = 5,
    Graph = 6,
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Key for a `(master_seed, domain, sub)` triple; `sub` separates e.g. doubling rounds.
fn key(master_seed: u64, domain: Domain, sub: u64) -> [u8; 32] {
    let mut state = master_seed ^ (domain as u64).rotate_left(48) ^ sub.rotate_left(17);
    let mut seed = [0u8; 32];
    for chunk in seed.chunks_exact_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    seed
}

/// RNG for item `index` of the given domain. Two calls with equal arguments yield
/// identical streams.
pub fn stream(master_seed: u64, domain: Domain, sub: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::from_seed(key(master_seed, domain, sub));
    rng.set_stream(index);
    rng
}
