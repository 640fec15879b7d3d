//! Seed plumbing.
//!
//! Every Monte Carlo loop in the crate is split into fixed-size chunks and
//! each chunk draws from its own ChaCha stream keyed by `(seed, chunk)`. The
//! chunk layout depends only on the sample count, so results are identical
//! for any number of rayon workers.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Stream = ChaCha8Rng;

/// Number of samples drawn from one substream in the chunked estimators.
pub const CHUNK: usize = 4096;

/// Independent generator for `(seed, index)`.
pub fn substream(seed: u64, index: u64) -> Stream {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Derive a child seed from a parent seed, a domain label and an index.
///
/// SplitMix64 finalizer over the mixed inputs; used to give each sub-experiment
/// (one distance on a curve, one pair in an isotropy run, ...) its own seed.
pub fn derive_seed(seed: u64, label: &str, index: u64) -> u64 {
    let mut h = seed ^ 0x9e37_79b9_7f4a_7c15;
    for b in label.bytes() {
        h = mix(h ^ u64::from(b));
    }
    mix(h ^ index.wrapping_mul(0xd1b5_4a32_d192_ed03))
}

fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Split `total` samples into `(chunk_index, len)` pairs of at most [`CHUNK`].
pub(crate) fn chunks(total: usize) -> impl Iterator<Item = (u64, usize)> + Clone {
    let n = total.div_ceil(CHUNK);
    (0..n).map(move |i| (i as u64, CHUNK.min(total - i * CHUNK)))
}
