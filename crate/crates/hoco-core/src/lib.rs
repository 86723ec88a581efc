//! Desk-scale machinery for finite truncated simplicial sets and finite
//! categories: nerves, products, quotients, integral homology, edge-path
//! groups, weighted homotopy colimits built as coends, certified
//! (homotopy-)siftedness checks, and homotopy algebras over finitely
//! presented simplicial theories.
//!
//! Everything is exact (checked 64-bit integers, typed overflow errors),
//! deterministic (no randomness, no hash-order iteration on output paths),
//! and certified: decision procedures return [`Verdict`]s carrying evidence
//! that can be re-verified independently of the code path that produced it.

pub mod corpus;
pub mod error;
pub mod exec;
pub mod fincat;
pub mod hocolim;
pub mod matrix;
pub mod shape;
pub mod simpset;
pub mod theories;
pub mod verdict;
pub mod weq;

pub use error::{Error, Result};
pub use verdict::{Evidence, Verdict};
