//! Fundamental groups of chordal graphical arrangements, computed as limits
//! of colored braid groups over the poset of simplices.
//!
//! For a finite simple graph `G`, the graphical arrangement has one complex
//! hyperplane `x_i = x_j` per edge. When `G` is chordal, the fundamental
//! group `Γ(G)` of the arrangement complement is the subgroup of the product
//! of the colored braid groups `P(S)`, over the maximal simplices `S` of
//! `G`, cut out by compatibility under strand forgetting. This crate makes
//! that description executable:
//!
//! - [`graph`]: chordality recognition, perfect elimination orderings,
//!   maximal simplices, and the `S⁰` neighborhood construction.
//! - [`freegroup`]: reduced words in free groups, the substrate for
//!   everything else.
//! - [`purebraid`]: braid words over arbitrary ordered index sets, the
//!   faithful Artin action as the word-problem oracle, strand forgetting,
//!   kernel coordinates, and Artin combing.
//! - [`gamma`]: elements of `Γ(G)` as compatible tuples over maximal
//!   simplices, with normal forms along a perfect elimination ordering.
//! - [`trees`]: rooted trees, their comparability graphs, and the
//!   height-indexed semidirect product profile.
//! - [`invariants`]: arrangement invariants (chromatic and Poincaré
//!   polynomials, region counts, abelianization), each paired with a
//!   brute-force oracle.
//! - [`selftest`]: the seeded verification suites behind the `selftest`
//!   command and the acceptance tests.
//!
//! The `examples/` directory contains one runnable walkthrough per major
//! capability; the `chordal-braids` binary is a thin command-line front end.

pub mod freegroup;
pub mod gamma;
pub mod graph;
pub mod invariants;
pub mod purebraid;
pub mod selftest;
pub mod trees;

pub mod cli;

pub use freegroup::{Alphabet, FreeWord};
pub use gamma::{GammaNormalForm, LimitElement};
pub use graph::{Graph, Peo, Simplex};
pub use purebraid::{BraidWord, CombedForm, IndexSet};
pub use trees::RootedTree;
