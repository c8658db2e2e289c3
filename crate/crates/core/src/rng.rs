//! Deterministic random streams.
//!
//! Every experiment is driven by a single `u64` root seed. Independent
//! streams (one per trial, per iteration, per mechanism call) are derived by
//! hashing a path of labels into a fresh ChaCha seed, so a stream depends only
//! on its position in the tree and never on scheduling order.

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

/// The generator used everywhere in the crate.
pub type DetRng = ChaCha12Rng;

/// Stream labels used by the learners. Kept in one place so that two call
/// sites never accidentally share a stream.
pub mod label {
    pub const TRIAL: u64 = 0x7472_6961;
    pub const ITERATION: u64 = 0x6974_6572;
    pub const THRESHOLD_NOISE: u64 = 0x6e6f_6973;
    pub const SELECT: u64 = 0x7365_6c65;
    pub const FACE: u64 = 0x6661_6365;
    pub const POINT: u64 = 0x706f_696e;
    pub const DATA: u64 = 0x6461_7461;
    pub const TARGET: u64 = 0x7461_7267;
    pub const HOLDOUT: u64 = 0x686f_6c64;
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// A node in the seed tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SeedPath(u64);

impl SeedPath {
    pub fn root(seed: u64) -> Self {
        SeedPath(splitmix64(seed))
    }

    /// Child node for `label` (and an index, e.g. the iteration number).
    pub fn child(self, label: u64, index: u64) -> Self {
        SeedPath(splitmix64(self.0 ^ splitmix64(label.wrapping_add(splitmix64(index)))))
    }

    pub fn rng(self) -> DetRng {
        let mut seed = [0u8; 32];
        let mut state = self.0;
        for chunk in seed.chunks_exact_mut(8) {
            state = splitmix64(state);
            chunk.copy_from_slice(&state.to_le_bytes());
        }
        DetRng::from_seed(seed)
    }
}
