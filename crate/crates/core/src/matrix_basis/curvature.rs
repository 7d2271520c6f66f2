use num_complex::Complex64;

use crate::error::Result;

use super::operator::{MatrixOperator, RadialOperator};

/// `sum_i delta_i(h) * x * delta_i(h)`, formed as
/// `d(h) * x * dbar(h) + dbar(h) * x * d(h)`.
pub fn gradient_sandwich(h: &MatrixOperator, x: &MatrixOperator) -> Result<MatrixOperator> {
    let d = h.partial();
    let db = h.partial_bar();
    d.star(x)?.star(&db)?.add(&db.star(x)?.star(&d)?)
}

/// Frame scalar curvature of the conformal factor `h`,
/// `h^2 * (Delta h - sum_i delta_i(h) * h^-1 * delta_i(h)) * h^-1`,
/// normalized so that a solution of the frame recurrence with parameter `R`
/// gives `(R/theta)` times the unit.
///
/// The result is clean on indices below `N - 2`.
pub fn frame_scalar_curvature(h: &RadialOperator) -> Result<MatrixOperator> {
    let inv = h.inverse()?.to_matrix();
    let h2 = h.star(h)?.to_matrix();
    let hm = h.to_matrix();
    let inner = hm.laplacian().sub(&gradient_sandwich(&hm, &inv)?)?;
    h2.star(&inner)?.star(&inv)
}

/// Same expression with an overall factor 2,
/// `2 h^2 * Delta h * h^-1 - 2 h^2 * delta_i(h) * h^-1 * delta_i(h) * h^-1`.
/// Equals twice [`frame_scalar_curvature`].
pub fn frame_curvature_literal(h: &RadialOperator) -> Result<MatrixOperator> {
    Ok(frame_scalar_curvature(h)?.scale(Complex64::new(2.0, 0.0)))
}
