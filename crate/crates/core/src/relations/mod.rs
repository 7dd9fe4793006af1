//! Integer lattices and the bridge from numerics to exact data: LLL,
//! integer relations, rational recognition, numerical rank, Smith normal
//! form and exact rational linear algebra.

mod integer_relation;
mod lll;
mod matrix;
mod qlinalg;
mod qrank;
mod recognize;
mod snf;

pub use integer_relation::{
    find_integer_relation, find_integer_relation_verified, find_vector_relation, relation_lattice, required_precision,
    Relation, RelationLattice, RelationOutcome,
};
pub use lll::{gram_schmidt_norms, lll_reduce, lll_reduce_with_transform, LllResult};
pub use matrix::IntegerMatrix;
pub use qlinalg::QMatrix;
pub use qrank::{qrank, singular_values, QRankReport, QRankSummary};
pub use recognize::{convergents, rational_recognize};
pub use snf::{smith_normal_form, SmithForm};
