use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::TreeError;

/// Longest representable node.
pub const MAX_NODE_LEN: usize = 64;

/// A finite 0/1 sequence of length ≤ 64, packed MSB-first into one word.
///
/// Bits past `len` are always zero, so the derived order on `(bits, len)` is
/// the lexicographic order in which a proper prefix precedes its extensions.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Node {
    bits: u64,
    len: u8,
}

impl Node {
    pub const ROOT: Node = Node { bits: 0, len: 0 };

    pub fn root() -> Node {
        Node::ROOT
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Left-aligned bit word (for hashing).
    pub fn raw_bits(&self) -> u64 {
        self.bits
    }

    /// The node of length `len` whose bits read `index` in binary, MSB first.
    pub fn from_index(index: u64, len: usize) -> Node {
        assert!(len <= MAX_NODE_LEN, "node too long");
        if len == 0 {
            return Node::ROOT;
        }
        debug_assert!(len == 64 || index < (1u64 << len));
        Node { bits: index << (64 - len), len: len as u8 }
    }

    /// The bits read as a binary number, MSB first.
    pub fn index(&self) -> u64 {
        if self.len == 0 {
            0
        } else {
            self.bits >> (64 - self.len)
        }
    }

    pub fn from_bits(bits: &[u8]) -> Node {
        let mut n = Node::ROOT;
        for &b in bits {
            n = n.child(b);
        }
        n
    }

    pub fn bits(&self) -> Vec<u8> {
        (0..self.len()).map(|i| self.bit_unchecked(i)).collect()
    }

    #[inline]
    fn bit_unchecked(&self, i: usize) -> u8 {
        ((self.bits >> (63 - i)) & 1) as u8
    }

    /// `η(i)`, or `None` when `i ≥ lg(η)`.
    #[inline]
    pub fn bit(&self, i: usize) -> Option<u8> {
        (i < self.len()).then(|| self.bit_unchecked(i))
    }

    /// `η⌢⟨b⟩`.
    #[inline]
    pub fn child(&self, b: u8) -> Node {
        assert!(self.len() < MAX_NODE_LEN, "node too long");
        let mut n = *self;
        if b != 0 {
            n.bits |= 1u64 << (63 - self.len());
        }
        n.len += 1;
        n
    }

    /// `η↾l` (the node itself when `l ≥ lg(η)`).
    #[inline]
    pub fn restrict(&self, l: usize) -> Node {
        if l >= self.len() {
            return *self;
        }
        let mask = if l == 0 { 0 } else { !0u64 << (64 - l) };
        Node { bits: self.bits & mask, len: l as u8 }
    }

    pub fn parent(&self) -> Option<Node> {
        (self.len > 0).then(|| self.restrict(self.len() - 1))
    }

    /// `self ⊴ other`.
    #[inline]
    pub fn is_prefix_of(&self, other: &Node) -> bool {
        self.len <= other.len && other.restrict(self.len()).bits == self.bits
    }

    /// `self ◁ other`.
    pub fn is_strict_prefix_of(&self, other: &Node) -> bool {
        self.len < other.len && self.is_prefix_of(other)
    }
}

/// `sp(η,ν)`: the first index where the bits differ, else the shorter length.
#[inline]
pub fn split_point(a: &Node, b: &Node) -> usize {
    let diff = (a.bits ^ b.bits).leading_zeros() as usize;
    diff.min(a.len()).min(b.len())
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            f.write_str(if self.bit_unchecked(i) == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{self}>")
    }
}

impl FromStr for Node {
    type Err = TreeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.len() > MAX_NODE_LEN {
            return Err(TreeError::BadNode(s.to_string()));
        }
        let mut n = Node::ROOT;
        for c in s.chars() {
            n = match c {
                '0' => n.child(0),
                '1' => n.child(1),
                _ => return Err(TreeError::BadNode(s.to_string())),
            };
        }
        Ok(n)
    }
}

impl Serialize for Node {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Node {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
