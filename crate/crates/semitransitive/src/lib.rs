//! Semitransitive subsemigroups of the singular part of the finite
//! symmetric inverse semigroup.
//!
//! A set of partial permutations of `{1..n}` acts semitransitively when for
//! every ordered pair of points `x, y` some element maps `x` to `y` or `y`
//! to `x`. Within the singular part (the non-invertible elements) the
//! minimal cardinality of a semitransitive subsemigroup is `2n - p + 1`,
//! with `p` the greatest proper divisor of `n`, and every minimal example
//! is similar to one of five parameterized constructions. This crate
//! provides:
//!
//! - [`pperm`]: partial injective maps and chain-cycle notation;
//! - [`semigroup`]: closure generation, idempotent structure, local
//!   subsemigroups, conjugation and similarity testing;
//! - [`semitrans`]: the reachability preorder, transitivity blocks,
//!   nilpotent structure, and an executable audit suite for the structural
//!   facts that force the bound;
//! - [`constructors`]: the five minimal families, the reference chain
//!   construction, and regeneration of three worked instances;
//! - [`search`]: exhaustive enumeration of semitransitive subsemigroups at
//!   small degree, confirming minimality and classification from scratch;
//! - [`cli`]: a command-line front end and a plain text file format.
//!
//! Start with the runnable programs under `examples/`.

#![forbid(unsafe_code)]

pub mod cli;
pub mod constructors;
pub mod pperm;
pub mod search;
pub mod semigroup;
pub mod semitrans;
#[cfg(test)]
pub(crate) mod testutil;

pub use pperm::{PPermError, PartialPerm, Point, PointSet};
pub use semigroup::{IdempotentProfile, Semigroup, SemigroupError};
pub use semitrans::{AuditReport, AuditStatus, BlockStructure, ReachMatrix};
