//! Reproducible random streams.
//!
//! Every sampler in this crate draws from an [`RngStream`], which wraps a
//! ChaCha20 generator keyed by a 64-bit seed and selected onto one of 2^64
//! independent streams by `stream_id`. ChaCha20 is a counter-based cipher, so
//! the byte sequence for a given `(seed, stream_id)` pair is fixed by the
//! algorithm itself and does not depend on platform or endianness.
//!
//! Key derivation: the 32-byte ChaCha key is expanded from the seed by
//! `ChaCha20Rng::seed_from_u64` (PCG32 expansion, `rand_core` 0.6). The
//! stream id is passed to `set_stream`.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

/// Identifies one reproducible stream of random numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StreamKey {
    pub seed: u64,
    pub stream_id: u64,
}

/// A seeded random stream. Not `Sync`-shared: give each worker its own.
#[derive(Debug, Clone)]
pub struct RngStream {
    key: StreamKey,
    inner: ChaCha20Rng,
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let mut inner = ChaCha20Rng::seed_from_u64(seed);
        inner.set_stream(stream_id);
        Self {
            key: StreamKey { seed, stream_id },
            inner,
        }
    }

    pub fn from_seed(seed: u64) -> Self {
        Self::new(seed, 0)
    }

    pub fn key(&self) -> StreamKey {
        self.key
    }

    /// A fresh stream with the same seed and a different stream id.
    pub fn fork(&self, stream_id: u64) -> Self {
        Self::new(self.key.seed, stream_id)
    }

    /// Uniform on the open interval (0, 1); never returns 0 or 1.
    pub fn open01(&mut self) -> f64 {
        loop {
            // 53 random mantissa bits, offset by half an ulp.
            let bits = self.inner.next_u64() >> 11;
            let u = (bits as f64 + 0.5) * (1.0 / (1u64 << 53) as f64);
            if u > 0.0 && u < 1.0 {
                return u;
            }
        }
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.inner.fill_bytes(dest)
    }

    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> Result<(), rand::Error> {
        self.inner.try_fill_bytes(dest)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_key_same_sequence() {
        let mut a = RngStream::new(42, 7);
        let mut b = RngStream::new(42, 7);
        for _ in 0..1000 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn streams_differ() {
        let mut a = RngStream::new(42, 0);
        let mut b = RngStream::new(42, 1);
        let xs: Vec<u64> = (0..8).map(|_| a.next_u64()).collect();
        let ys: Vec<u64> = (0..8).map(|_| b.next_u64()).collect();
        assert_ne!(xs, ys);
    }

    #[test]
    fn open01_in_range() {
        let mut r = RngStream::from_seed(1);
        for _ in 0..10_000 {
            let u = r.open01();
            assert!(u > 0.0 && u < 1.0);
        }
    }

    #[test]
    fn pinned_first_word() {
        // Guards against silent changes in the generator or key derivation.
        let mut r = RngStream::new(0, 0);
        let first = r.next_u64();
        assert_eq!(first, 449_479_075_714_955_186);
        let mut again = RngStream::new(0, 0);
        assert_eq!(first, again.next_u64());
        let mut other_seed = RngStream::new(1, 0);
        assert_ne!(first, other_seed.next_u64());
    }
}
