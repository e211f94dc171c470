//! Exact computation of the trivalent graph-homology spaces `A_k^even` and
//! `A_k^odd` (connected trivalent graphs modulo IHX and the orientation
//! relations), plus the Y-link surgery planner for trivalent graphs in an
//! ambient dimension `d >= 4`.
//!
//! Module map:
//!
//! - [`multigraph`]: dart graphs, canonical forms, automorphisms, enumeration.
//! - [`orientation`]: label-change and cycle-space signs, zero-class detection.
//! - [`exactla`]: exact sparse integer linear algebra with modular cross-checks.
//! - [`homology`]: class bases, IHX rows, dimensions and certificates.
//! - [`oracle`]: brute-force dimensions over fully labelled graphs (k <= 2).
//! - [`surgery`]: Type I/II typing, handle and Hopf-link ledgers.

pub mod error;
pub mod exactla;
pub mod homology;
pub mod multigraph;
pub mod oracle;
pub mod orientation;
pub mod par;
pub mod perm;
pub mod surgery;

use serde::{Deserialize, Serialize};

pub use error::{Error, Result};
pub use multigraph::{DartGraph, Isomorphism, TadpolePolicy};
pub use orientation::Convention;
pub use par::Parallelism;
pub use perm::Sign;

/// Resource ceilings shared by the enumerator and the linear algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub max_classes: usize,
    pub max_matrix_entries: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_classes: 200_000, max_matrix_entries: 50_000_000 }
    }
}
