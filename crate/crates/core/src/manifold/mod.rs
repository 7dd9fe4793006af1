//! Shape data of ideal triangulations over an invariant trace field.
//!
//! A record names a field with its embedding and one cross-ratio per ideal
//! tetrahedron. Validation checks Thurston's relation exactly through the
//! mu-map; analysis turns the Bloch invariant into a volume, a Chern-Simons
//! class and a rationality verdict.

mod analysis;
mod cross_ratio;
mod record;

pub use analysis::{analyze, Classification, ManifoldReport, Verdict};
pub use cross_ratio::{cross_ratio, Point};
pub use record::{recognize_shape, ManifoldRecord, ValidationReport};
