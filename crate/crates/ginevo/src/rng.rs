//! Reproducible counter-based random substreams.
//!
//! Every Monte Carlo sample draws from its own substream identified by
//! `(master_seed, stream_index)`. Substreams are independent ChaCha streams,
//! so samples can be generated in any order, on any number of workers, and
//! still produce bitwise identical output.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Identifies one random substream.
///
/// The map `(master_seed, stream_index) -> substream` is injective: the
/// master seed fills the 256-bit ChaCha key and the stream index selects the
/// 64-bit ChaCha stream counter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedSpec {
    pub master_seed: u64,
    pub stream_index: u64,
}

impl SeedSpec {
    pub fn new(master_seed: u64, stream_index: u64) -> Self {
        SeedSpec {
            master_seed,
            stream_index,
        }
    }

    /// Substream for sample `index` under the same master seed.
    pub fn stream(self, index: u64) -> Self {
        SeedSpec {
            master_seed: self.master_seed,
            stream_index: index,
        }
    }

    /// Build the RNG for this substream.
    pub fn rng(self) -> ChaCha8Rng {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&self.master_seed.to_le_bytes());
        // Decorrelate keys that differ only in a few low bits.
        key[8..16].copy_from_slice(&self.master_seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).to_le_bytes());
        let mut rng = ChaCha8Rng::from_seed(key);
        rng.set_stream(self.stream_index);
        rng
    }
}
