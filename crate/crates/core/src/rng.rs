//! Seed derivation.
//!
//! Every random stream in an experiment is derived from one master seed by a
//! `(label, index)` pair, so adding a consumer (an extra diagnostic, a
//! different recording cadence) never shifts the draws seen by another one.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The concrete random stream used throughout the crate.
pub type Stream = ChaCha8Rng;

/// A master seed from which labelled child seeds and streams are split.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SeedTree {
    master: u64,
}

impl SeedTree {
    pub const fn new(master: u64) -> Self {
        Self { master }
    }

    pub const fn master(&self) -> u64 {
        self.master
    }

    /// Child seed for `(label, index)`.
    pub fn seed(&self, label: &str, index: u64) -> u64 {
        splitmix(splitmix(self.master ^ fnv1a(label)).wrapping_add(index))
    }

    /// Fresh stream seeded from [`SeedTree::seed`].
    pub fn stream(&self, label: &str, index: u64) -> Stream {
        Stream::seed_from_u64(self.seed(label, index))
    }

    /// A nested tree, for handing a whole namespace to a sub-component.
    pub fn subtree(&self, label: &str, index: u64) -> SeedTree {
        SeedTree::new(self.seed(label, index))
    }
}

fn fnv1a(label: &str) -> u64 {
    let mut hash = 0xcbf2_9ce4_8422_2325u64;
    for byte in label.bytes() {
        hash ^= u64::from(byte);
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

fn splitmix(z: u64) -> u64 {
    let mut z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
