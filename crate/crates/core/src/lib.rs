//! Constant-curvature conformal metrics on the Moyal plane.
//!
//! * [`classical`]: the commutative family `k = A r^(a-1)/(b + r^(2a))`.
//! * [`matrix_basis`]: truncated matrix-basis algebra and the frame
//!   curvature operator.
//! * [`recurrence`]: the radial recurrence, its estimators and the
//!   linearly growing seed.
//! * [`perturbative`]: order `theta^2` expansions and the deformed
//!   Fubini-Study factor.

pub mod classical;
pub mod cli;
pub mod error;
pub mod fit;
pub mod matrix_basis;
pub mod perturbative;
pub mod real;
pub mod recurrence;

pub use error::{Error, Result};
pub use real::{Extended, Precision, Real};
