//! Per-path random streams.
//!
//! Each (seed, stream, path) triple maps to its own ChaCha8 stream, so the
//! numbers a path sees do not depend on scheduling or thread count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

/// Brownian driver a stream feeds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Stream {
    /// B^X, or the long-term electricity factor.
    X = 0,
    /// B^Y, or the long-term coal factor.
    Y = 1,
    /// Short-term electricity factor.
    ShortE = 2,
    /// Short-term coal factor.
    ShortG = 3,
}

const PATH_BITS: u32 = 48;

pub fn path_rng(seed: u64, stream: Stream, path: u64) -> ChaCha8Rng {
    assert!(path < 1 << PATH_BITS, "path index {path} exceeds 2^{PATH_BITS}");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((stream as u64) << PATH_BITS) | path);
    rng
}

/// Standard normal draws for one (seed, stream, path).
pub struct NormalStream {
    rng: ChaCha8Rng,
}

impl NormalStream {
    pub fn new(seed: u64, stream: Stream, path: u64) -> Self {
        Self { rng: path_rng(seed, stream, path) }
    }

    #[inline]
    pub fn next(&mut self) -> f64 {
        StandardNormal.sample(&mut self.rng)
    }
}

/// First `n` Brownian increments N(0, dt) of a stream.
pub fn gen_normal_increments(seed: u64, stream: Stream, path: u64, dt: f64, n: usize) -> Vec<f64> {
    let mut s = NormalStream::new(seed, stream, path);
    let sd = dt.sqrt();
    (0..n).map(|_| sd * s.next()).collect()
}
