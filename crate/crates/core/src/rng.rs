//! Seeded random streams.
//!
//! Every replication of a Monte Carlo cell draws from its own ChaCha8 stream.
//! ChaCha is a counter-mode generator: the seed fixes the key and the stream
//! id fixes the nonce, so replication `k` sees the same numbers no matter
//! which worker runs it or in which order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

/// What a stream is used for inside one replication.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StreamPurpose {
    /// Draws the synthetic sample.
    Sample = 0,
    /// Auxiliary randomness of the estimator itself (noise draws).
    Estimator = 1,
}

const PURPOSES: u64 = 2;

/// A fresh generator for `seed`, positioned at the start of stream 0.
pub fn seeded(seed: u64) -> StreamRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The stream for replication `replication` of a cell seeded with `seed`.
pub fn replication_stream(seed: u64, replication: u64, purpose: StreamPurpose) -> StreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(
        replication
            .wrapping_mul(PURPOSES)
            .wrapping_add(purpose as u64),
    );
    rng
}

/// SplitMix64 finalizer; used to derive independent cell seeds from a
/// user seed and a cell coordinate.
pub fn mix_seed(seed: u64, salt: u64) -> u64 {
    let mut z = seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
