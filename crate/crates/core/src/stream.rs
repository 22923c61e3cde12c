//! Deterministic, splittable RNG streams.
//!
//! Experiments key every random stream by `(master_seed, stream_id)` so that
//! replication `r` sees the same draws no matter how the replications are
//! scheduled. Streams are ChaCha8 generators whose 256-bit seed is expanded
//! from the two keys with SplitMix64.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(GOLDEN);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// RNG stream for `(master_seed, stream_id)`. Distinct ids give
/// statistically independent streams; identical keys give identical draws.
pub fn stream(master_seed: u64, stream_id: u64) -> ChaCha8Rng {
    let mut state = master_seed ^ stream_id.wrapping_mul(GOLDEN);
    let mut seed = [0u8; 32];
    for chunk in seed.chunks_exact_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    ChaCha8Rng::from_seed(seed)
}
