use crate::error::{invalid, Result};
use crate::real::{Extended, Real};

fn check(n: usize, curvature: f64, min_n: usize) -> Result<()> {
    if n < min_n {
        return Err(invalid("n", format!("must be at least {min_n}, got {n}")));
    }
    if !curvature.is_finite() {
        return Err(invalid("R", "must be finite"));
    }
    Ok(())
}

fn series<T: Real>(n: usize, curvature: f64) -> T {
    let n = T::from_usize(n);
    let r = curvature;
    let inv = T::from_f64(1.0) / n.clone();
    let c0 = T::from_f64(0.5 * (r + 1.0));
    let c1 = T::from_f64(1.0) / T::from_f64(8.0);
    let c2 = -(T::from_f64(13.0 * r + 9.0) / T::from_f64(144.0));
    let c3 = (T::from_f64(-0.25)
        + T::from_f64(26.0) * T::from_f64(r) / T::from_f64(9.0)
        + T::from_f64(29.0) * T::from_f64(r * r) / T::from_f64(18.0))
        / T::from_f64(32.0);
    n + c0 + inv.clone() * (c1 + inv.clone() * (c2 + inv * c3))
}

/// Large-`n` series of the linearly growing solution,
/// `n + (R+1)/2 + 1/(8n) - (13R+9)/(144 n^2) + (-1/4 + 26R/9 + 29R^2/18)/(32 n^3)`.
pub fn fs_series(n: usize, curvature: f64) -> Result<f64> {
    check(n, curvature, 1)?;
    Ok(series::<f64>(n, curvature))
}

/// Residual of the frame recurrence at index `n` evaluated on three
/// consecutive series values. The terms are of size `n` while the residual
/// is `O(n^-4)`, so the evaluation runs in extended precision.
pub fn fs_series_residual(n: usize, curvature: f64) -> Result<f64> {
    check(n, curvature, 2)?;
    let prev: Extended = series(n - 1, curvature);
    let cur: Extended = series(n, curvature);
    let next: Extended = series(n + 1, curvature);
    let nn = Extended::from_usize(n);
    let forward = Extended::from_usize(n + 1) * (next.clone() * next.clone() - cur.clone() * cur.clone()) / next;
    let back = nn * (prev.clone() * prev.clone() - cur.clone() * cur.clone()) / prev;
    Ok((forward + back - Extended::from_f64(curvature) / cur).to_f64())
}
