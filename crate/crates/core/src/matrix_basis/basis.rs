use num_complex::Complex64;

use crate::error::{invalid, Error, Result};

/// Largest basis index accepted by [`basis_eval`].
pub const BASIS_INDEX_LIMIT: usize = 10_000_000;

const RESCALE_THRESHOLD: f64 = 1e200;

/// Generalized Laguerre polynomial `L_m^alpha(x)` as `(mantissa, log_scale)`
/// with value `mantissa * exp(log_scale)`, using the upward three-term
/// recurrence with periodic rescaling.
pub fn laguerre_scaled(m: usize, alpha: f64, x: f64) -> (f64, f64) {
    let mut prev = 1.0;
    if m == 0 {
        return (prev, 0.0);
    }
    let mut cur = 1.0 + alpha - x;
    let mut log_scale = 0.0;
    for k in 1..m {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
        let mag = cur.abs();
        if mag > RESCALE_THRESHOLD {
            prev /= mag;
            cur /= mag;
            log_scale += mag.ln();
        }
    }
    (cur, log_scale)
}

/// Generalized Laguerre polynomial `L_m^alpha(x)`; may overflow for large `m`.
pub fn laguerre(m: usize, alpha: f64, x: f64) -> f64 {
    let (v, s) = laguerre_scaled(m, alpha, x);
    v * s.exp()
}

fn ln_factorial(n: usize) -> f64 {
    libm::lgamma(n as f64 + 1.0)
}

/// Value of the matrix-basis function `f_{m,n}` at polar coordinates
/// `(r, angle)`:
///
/// `2 (-1)^m sqrt(m!/n!) e^{i angle (m-n)} (sqrt(2/theta) r)^(n-m)
///  L_m^(n-m)(2 r^2/theta) e^(-r^2/theta)` for `m <= n`, and
/// `conj(f_{n,m})` otherwise.
pub fn basis_eval(m: usize, n: usize, theta: f64, r: f64, angle: f64) -> Result<Complex64> {
    if !(theta.is_finite() && theta > 0.0) {
        return Err(invalid("theta", format!("must be positive, got {theta}")));
    }
    if !(r.is_finite() && r >= 0.0) {
        return Err(invalid("r", format!("must be non-negative, got {r}")));
    }
    if m.max(n) > BASIS_INDEX_LIMIT {
        return Err(Error::Capacity {
            m,
            n,
            limit: BASIS_INDEX_LIMIT,
        });
    }
    if m > n {
        return basis_eval(n, m, theta, r, angle).map(|z| z.conj());
    }
    let alpha = n - m;
    if alpha > 0 && r == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let (lag, lag_scale) = laguerre_scaled(m, alpha as f64, 2.0 * r * r / theta);
    if lag == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let radial_power = if alpha == 0 {
        0.0
    } else {
        alpha as f64 * ((2.0 / theta).sqrt() * r).ln()
    };
    let log_mag = std::f64::consts::LN_2 + 0.5 * (ln_factorial(m) - ln_factorial(n)) + radial_power - r * r / theta
        + lag.abs().ln()
        + lag_scale;
    let magnitude = log_mag.exp();
    if !magnitude.is_finite() {
        return Err(Error::Capacity {
            m,
            n,
            limit: BASIS_INDEX_LIMIT,
        });
    }
    let sign = if (m % 2 == 1) != (lag < 0.0) { -1.0 } else { 1.0 };
    let phase = Complex64::from_polar(1.0, angle * (m as f64 - n as f64));
    Ok(phase * (sign * magnitude))
}
