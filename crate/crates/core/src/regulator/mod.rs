//! Borel regulator matrices, predicted and observed eigenspace ranks, and
//! the volume / Chern-Simons class of a class with vanishing mu.

mod matrix;
mod ranks;
mod rho;
mod sample;

pub use matrix::{
    borel_matrix, d2_at, d2_tolerance, embedding_representatives, RegulatorMatrix, RegulatorSummary,
};
pub use ranks::{
    eigenspace_matrices, predicted_ranks, verify_theorem_b, PredictionBasis, RankReport, ZeroBlockReport,
};
pub use rho::{
    cs_rationality_report, rho_class, rho_class_with, CsClass, Rationality, DEFAULT_MAX_DENOMINATOR,
    IDENTIFICATION,
};
pub use sample::{default_sample, exceptional_candidates, SAMPLE_CANDIDATES};
