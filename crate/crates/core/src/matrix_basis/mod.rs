//! Truncated matrix-basis model of the Moyal algebra.

mod basis;
mod curvature;
mod json;
mod operator;
mod radial;

pub use basis::{basis_eval, laguerre, laguerre_scaled, BASIS_INDEX_LIMIT};
pub use curvature::{frame_curvature_literal, frame_scalar_curvature, gradient_sandwich};
pub use json::{ComplexJson, MatrixOperatorJson, RadialOperatorJson};
pub use operator::{MatrixOperator, RadialOperator};
pub use radial::{
    averaged_partial_sum, default_passes, eval_radial_series, fubini_study_inverse_coefficients, hyp2f1_terminating,
    partition_sums, radial_power_coefficients, PartitionSums,
};
