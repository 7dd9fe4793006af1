//! Exact number-field arithmetic with certified embeddings, and the
//! classification of an embedded field: conjugation stability, commuting
//! pairs, CM tests, F cap R and F cap conj(F).

mod embedded;
mod field;
mod irreducible;
mod poly;
mod roots;

pub use embedded::{
    conjugate_sum_resultant, embeddings, ConjugateIntersection, EmbeddedField, EmbeddingClass, EmbeddingEntry,
    EmbeddingTable, RealSubfield, Stability,
};
pub use field::{cyclotomic_poly, euler_phi, FieldElement, NumberField, MAX_DEGREE};
pub use irreducible::check_irreducible;
pub use poly::{parse_rational, QPoly};
pub use roots::{isolate_roots, RootDisk, RootKind, RootTable};
