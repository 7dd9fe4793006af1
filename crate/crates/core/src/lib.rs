//! Computations in Bloch groups of embedded number fields.
//!
//! The crate is organised bottom-up:
//!
//! * [`numeric`]: precision-tagged reals and complexes, Li2, the
//!   Bloch-Wigner function and the Bloch-map integrand.
//! * [`relations`]: exact LLL, integer-relation detection, rational
//!   recognition, numerical rank and exact linear algebra.
//! * [`numberfield`]: exact arithmetic in Q[x]/(f) with certified
//!   embeddings and the conjugation/CM taxonomy.
//! * [`blochgrp`]: formal sums, the five-term relation and the exact
//!   mu-map into a constructed multiplicative basis.
//! * [`regulator`]: Borel regulator matrices, eigenspace rank
//!   predictions and the volume / Chern-Simons class.
//! * [`manifold`]: shape-parameter records and their verdicts.
//! * [`milnor`]: cyclotomic elements and bounded relation scans.

pub mod blochgrp;
pub mod error;
pub mod manifold;
pub mod milnor;
pub mod numberfield;
pub mod numeric;
pub mod regulator;
pub mod relations;

pub use error::{BlochError, Result};
pub use numeric::{Complex, PrecisionContext, Real};

/// Library version stamped into every report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
