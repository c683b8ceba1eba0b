//! Seeded, splittable random streams.
//!
//! Every task in an experiment draws from its own `(seed, stream_id)` pair,
//! so results depend only on the task index and never on scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const DOMAIN_SHIFT: u32 = 62;
const DIM_SHIFT: u32 = 48;
const INDEX_MASK: u64 = (1 << DIM_SHIFT) - 1;
const DIM_MASK: u64 = (1 << (DOMAIN_SHIFT - DIM_SHIFT)) - 1;

/// Disjoint stream-id ranges for the kinds of draws an experiment makes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum StreamDomain {
    States = 0,
    Pairs = 1,
    Candidates = 2,
    Aux = 3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RngStream {
    pub seed: u64,
    pub stream_id: u64,
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        RngStream { seed, stream_id }
    }

    /// Stream for the `index`-th task of `domain` at local dimension `dim`.
    ///
    /// Layout: 2 domain bits, 14 dimension bits, 48 index bits.
    pub fn for_task(seed: u64, domain: StreamDomain, dim: usize, index: u64) -> Self {
        let stream_id = ((domain as u64) << DOMAIN_SHIFT)
            | ((dim as u64 & DIM_MASK) << DIM_SHIFT)
            | (index & INDEX_MASK);
        RngStream { seed, stream_id }
    }

    /// ChaCha8 keyed by `seed` on stream `stream_id`; ChaCha streams are
    /// independent keystreams of the same key.
    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream_id);
        rng
    }
}
