//! The seeded mixing rule behind every pseudo-random coloring.
//!
//! A value is hashed by folding its words through SplitMix64:
//! `h₀ = splitmix64(seed)`, `hᵢ₊₁ = splitmix64(hᵢ ⊕ wordᵢ)`. The word encodings
//! of nodes, ordinals and order types are fixed here so that seeded colorings
//! are bit-identical on every platform.

use crate::ordinals::{Ordinal, Otp};
use crate::seqtree::Node;

/// One SplitMix64 output step applied to `x`.
#[inline]
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Streaming hasher over 64-bit words.
#[derive(Clone, Copy, Debug)]
pub struct Mixer(u64);

impl Mixer {
    pub fn new(seed: u64) -> Self {
        Mixer(splitmix64(seed))
    }

    #[inline]
    pub fn word(&mut self, w: u64) -> &mut Self {
        self.0 = splitmix64(self.0 ^ w);
        self
    }

    /// Node: its length, then its bits left-aligned in one word.
    pub fn node(&mut self, n: &Node) -> &mut Self {
        self.word(n.len() as u64).word(n.raw_bits())
    }

    /// Ordinal: the number of terms, then exponent and coefficient of each.
    pub fn ordinal(&mut self, a: &Ordinal) -> &mut Self {
        self.word(a.terms().len() as u64);
        for t in a.terms() {
            self.word(t.exp as u64).word(t.coef);
        }
        self
    }

    /// Order type: finite values as themselves, ω as `u64::MAX`.
    pub fn otp(&mut self, o: Otp) -> &mut Self {
        self.word(o.as_key())
    }

    pub fn finish(&self) -> u64 {
        self.0
    }

    /// Reduce to a color below `colors` (which must be positive).
    pub fn color(&self, colors: u32) -> u32 {
        (self.0 % colors as u64) as u32
    }
}
