//! The pre-Bloch calculus over an embedded number field.
//!
//! Formal sums of symbols [z] carry rational coefficients. The mu-map
//! [z] -> z ^ (1 - z) is evaluated exactly: the multiplicative relations
//! among the z and 1 - z are detected numerically from their logarithms,
//! each one is verified by an exact root-of-unity test, and the wedge
//! coordinates are computed over the free generators that remain.
//! Missing a relation can only make the basis larger, so a zero verdict is
//! always a proof.

mod basis;
mod formal;
mod kernel;
mod wedge;

pub use basis::{
    build_multiplicative_basis, build_multiplicative_basis_with, power_product, torsion_exponent_bound,
    BasisSummary, MultiplicativeBasis, DEFAULT_HEIGHT,
};
pub use formal::{eigenspace_split, five_term, involution, FormalSum};
pub use kernel::mu_kernel;
pub use wedge::{mu, mu_basis, mu_in_basis, mu_support, mu_with_height, MuReport, MuResult, MuVerdict, WedgeElement};
