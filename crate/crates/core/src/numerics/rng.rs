//! Reproducible random streams.
//!
//! A stream is identified by `(master_seed, stream_id)`. The generator is
//! ChaCha8: the 256-bit key is four successive SplitMix64 outputs seeded with
//! `master_seed` (little-endian), and `stream_id` is the ChaCha stream
//! (nonce) word. Stream derivation is O(1) and the sequence for a given pair
//! is identical on every platform.
//!
//! Variate transforms are pinned here as well, so golden values never depend
//! on a distribution crate's internals:
//!
//! - uniform `[0, 1)`: `(next_u64 >> 11) * 2^-53`
//! - uniform `(0, 1]`: `((next_u64 >> 11) + 1) * 2^-53`
//! - phase: `2π · uniform[0, 1)`
//! - exponential(1): `-ln(uniform(0, 1])`
//! - standard normal pair: Box-Muller on `(uniform(0, 1], uniform[0, 1))`

use core::f64::consts::TAU;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;
const INV_2_53: f64 = 1.0 / (1u64 << 53) as f64;

#[inline]
fn splitmix_finalize(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn expand_key(master_seed: u64) -> [u8; 32] {
    let mut key = [0u8; 32];
    let mut state = master_seed;
    for chunk in key.chunks_exact_mut(8) {
        state = state.wrapping_add(GOLDEN_GAMMA);
        chunk.copy_from_slice(&splitmix_finalize(state).to_le_bytes());
    }
    key
}

#[derive(Clone, Debug)]
pub struct RngStream {
    master_seed: u64,
    stream_id: u64,
    rng: ChaCha8Rng,
}

impl RngStream {
    pub fn new(master_seed: u64, stream_id: u64) -> Self {
        let mut rng = ChaCha8Rng::from_seed(expand_key(master_seed));
        rng.set_stream(stream_id);
        RngStream {
            master_seed,
            stream_id,
            rng,
        }
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// Child stream for `lane`, starting at the beginning of its sequence.
    ///
    /// Depends only on `(master_seed, stream_id, lane)`, never on how much of
    /// the parent has been consumed.
    pub fn split(&self, lane: u64) -> RngStream {
        let id = splitmix_finalize(
            self.stream_id ^ splitmix_finalize(lane.wrapping_add(GOLDEN_GAMMA)),
        );
        RngStream::new(self.master_seed, id)
    }

    /// Fresh copy of this stream rewound to its first draw.
    pub fn restart(&self) -> RngStream {
        RngStream::new(self.master_seed, self.stream_id)
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    #[inline]
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * INV_2_53
    }

    #[inline]
    pub fn uniform_open_closed(&mut self) -> f64 {
        ((self.next_u64() >> 11) + 1) as f64 * INV_2_53
    }

    #[inline]
    pub fn phase(&mut self) -> f64 {
        TAU * self.uniform()
    }

    #[inline]
    pub fn exponential(&mut self) -> f64 {
        -libm::log(self.uniform_open_closed())
    }

    #[inline]
    pub fn standard_normal_pair(&mut self) -> (f64, f64) {
        let radius = libm::sqrt(-2.0 * libm::log(self.uniform_open_closed()));
        let (s, c) = libm::sincos(self.phase());
        (radius * c, radius * s)
    }
}
