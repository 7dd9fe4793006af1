//! Arbitrary-precision real and complex arithmetic together with the
//! dilogarithm family of special functions.

mod complex;
mod dilog;
mod precision;
mod real;

pub use complex::Complex;
pub use dilog::{
    bernoulli_even, bloch_wigner_d2, catalan, clausen, li2, ln2, pi, rho_scalar, RhoScalar,
};
pub use precision::{PrecisionContext, GUARD_BITS};
pub use real::{bigint_log2_ceil, Real};
pub(crate) use real::rational_abs_log2;
