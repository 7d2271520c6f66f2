//! Radial constant-curvature recurrence in the matrix basis.
//!
//! A radial conformal factor `h = sum_n phi_n f_{n,n}` has constant frame
//! curvature exactly when
//!
//! `(n+1)(phi_{n+1}^2 - phi_n^2)/phi_{n+1} + n(phi_{n-1}^2 - phi_n^2)/phi_{n-1} = R/phi_n`,
//!
//! the `n = 0` equation lacking the second term. Rosenberg's convention
//! replaces the right side by `-c/phi_n^2`.

mod estimate;
mod export;
mod problem;
mod seed;
mod series;
mod solver;

pub use estimate::{
    exponent_at, exponent_estimate, exponent_slope, gauss_bonnet_estimate, telescoping_check, ExponentEstimate,
    TelescopingCheck, CENTRAL_INDEX, LOWER_INDEX, UPPER_INDEX,
};
pub use export::{full_precision, read_phi_column, write_solution_csv};
pub use problem::{RecurrenceProblem, Variant};
pub use seed::{exponent_for_seed, find_fs_seed, find_fs_seed_with, scan_exponents, SeedResult, SeedSearch};
pub use series::{fs_series, fs_series_residual};
pub use solver::{
    first_step, precision_check, solve, solve_prefix, step, PrecisionCheck, RecurrenceSolution, VolumeDiagnostic,
    RESIDUAL_ULPS,
};
