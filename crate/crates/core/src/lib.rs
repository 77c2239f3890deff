//! Operator norms, certified numerical radii, singular values and a catalog of
//! n-tuple operator inequalities for small dense complex matrices.
//!
//! Every numerical radius is returned as a certified enclosure
//! ([`RadiusEstimate`]); inequality verdicts consume the enclosure side that
//! makes a "holds" verdict conservative.

pub mod blockops;
pub mod bounds;
pub mod error;
pub mod harness;
pub mod linalg;
pub mod numradius;
mod sweep;
pub mod tolerance;

pub use blockops::{block_identity_check, offdiag_block, sup_theta_norm, BlockIdentityReport};
pub use bounds::{
    compare_all, evaluate_bound, evaluate_many, evaluate_on_tuple, pairwise_sum_identity_check, singular_value_bounds,
    Arity, BoundId, BoundReport,
};
pub use error::{Error, Result};
pub use linalg::{
    abs_operator, adjoint, hermitian_eigen, imag_part, operator_norm, real_part, singular_values, ComplexMatrix,
    HermitianEigen, C64,
};
pub use numradius::{numerical_radius, radius_sampling_oracle, rotated_real_part, RadiusEstimate};
pub use tolerance::ToleranceConfig;
