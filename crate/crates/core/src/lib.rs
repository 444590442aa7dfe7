//! Desk-scale partition calculus.
//!
//! * [`ordinals`]: Cantor normal form below ω^ω and the canonical club system.
//! * [`seqtree`]: packed 0/1 nodes, finite trees, perfectness predicates, collapse.
//! * [`similarity`]: strong similarity, similarity, type codes, the h(n) census and
//!   homogeneity checkers.
//! * [`hltree`]: level colorings, Halpern–Läuchli certificate search and verification,
//!   homogeneous-subtree search, T*_k and its embeddings.
//! * [`walks`]: walks through clubs, the d₁/d₂/d colorings, stepping up and the
//!   realization checkers.
//! * [`cli`]: the `partlab` command-line front end.

pub mod cli;
pub mod coloring;
pub mod hltree;
pub mod mix;
pub mod ordinals;
pub mod seqtree;
pub mod similarity;
pub mod walks;

pub use coloring::SetColoring;
pub use ordinals::{Club, Ordinal, OrdinalKind, Otp};
pub use seqtree::{FiniteTree, Node};
