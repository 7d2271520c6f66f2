use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Index of the central exponent estimate.
pub const CENTRAL_INDEX: usize = 5000;
/// Index of the lower stability bar.
pub const LOWER_INDEX: usize = 4000;
/// Index of the upper stability bar.
pub const UPPER_INDEX: usize = 6000;

fn need(phi: &[f64], index: usize) -> Result<()> {
    if index < phi.len() {
        Ok(())
    } else {
        Err(Error::InsufficientLength {
            needed: index + 1,
            available: phi.len(),
        })
    }
}

/// `4 pi (N+1) (phi_{N+1}/phi_N - phi_N/phi_{N+1})`, whose limit is `8 pi a`
/// for `phi_n ~ A n^a`.
pub fn gauss_bonnet_estimate(phi: &[f64], n: usize) -> Result<f64> {
    need(phi, n + 1)?;
    Ok(4.0 * PI * (n + 1) as f64 * ratio_gap(phi[n], phi[n + 1]))
}

/// `b/a - a/b`, factored to avoid cancelling two numbers close to 1.
pub(crate) fn ratio_gap(a: f64, b: f64) -> f64 {
    (b - a) * (b + a) / (a * b)
}

/// Left-minus-right of the cut-off identity behind the Gauss-Bonnet sum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TelescopingCheck {
    pub difference: f64,
    /// Sum of the absolute values of every term on the left.
    pub magnitude: f64,
}

impl TelescopingCheck {
    pub fn relative(&self) -> f64 {
        if self.magnitude == 0.0 {
            self.difference.abs()
        } else {
            self.difference.abs() / self.magnitude
        }
    }
}

/// Evaluates
///
/// `sum_{n<=N} [-(2n+1) - n phi_n/phi_{n-1} - (n+1) phi_n/phi_{n+1}]
///  + sum_{n<=N+1} n (phi_n/phi_{n-1} + 1)
///  + sum_{n<=N-1} (n+1) (phi_n/phi_{n+1} + 1)`
///
/// term by term and subtracts `(N+1)(phi_{N+1}/phi_N - phi_N/phi_{N+1})`.
/// The difference vanishes for every positive sequence.
pub fn telescoping_check(phi: &[f64], n_cut: usize) -> Result<TelescopingCheck> {
    need(phi, n_cut + 1)?;
    if let Some(i) = phi[..=n_cut + 1].iter().position(|v| !(*v > 0.0 && v.is_finite())) {
        return Err(invalid("phi", format!("entry {i} is not positive")));
    }
    let mut total = 0.0;
    let mut magnitude = 0.0;
    let mut push = |t: f64| {
        total += t;
        magnitude += t.abs();
    };
    for n in 0..=n_cut {
        let nf = n as f64;
        push(-(2.0 * nf + 1.0));
        if n > 0 {
            push(-nf * phi[n] / phi[n - 1]);
        }
        push(-(nf + 1.0) * phi[n] / phi[n + 1]);
    }
    for n in 1..=n_cut + 1 {
        push(n as f64 * (phi[n] / phi[n - 1] + 1.0));
    }
    for n in 0..n_cut {
        push((n as f64 + 1.0) * (phi[n] / phi[n + 1] + 1.0));
    }
    let ratio = phi[n_cut + 1] / phi[n_cut];
    let rhs = (n_cut + 1) as f64 * (ratio - ratio.recip());
    Ok(TelescopingCheck {
        difference: total - rhs,
        magnitude,
    })
}

/// `ln phi_N / ln N`.
pub fn exponent_at(phi: &[f64], n: usize) -> Result<f64> {
    need(phi, n)?;
    if n < 2 {
        return Err(invalid("N", "the estimator needs N >= 2"));
    }
    Ok(phi[n].ln() / (n as f64).ln())
}

/// Exponent estimate with the stability bars at n = 4000 and n = 6000.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentEstimate {
    pub a_hat: f64,
    /// Estimator at `N = 4000`.
    pub bar_low: f64,
    /// Estimator at `N = 6000`.
    pub bar_high: f64,
}

impl ExponentEstimate {
    /// Whether the two bars enclose the central value.
    pub fn brackets(&self) -> bool {
        let lo = self.bar_low.min(self.bar_high);
        let hi = self.bar_low.max(self.bar_high);
        lo <= self.a_hat && self.a_hat <= hi
    }
}

/// `ln phi_5000 / ln 5000`, with bars from `N = 4000` and `N = 6000`.
pub fn exponent_estimate(phi: &[f64]) -> Result<ExponentEstimate> {
    need(phi, UPPER_INDEX)?;
    Ok(ExponentEstimate {
        a_hat: exponent_at(phi, CENTRAL_INDEX)?,
        bar_low: exponent_at(phi, LOWER_INDEX)?,
        bar_high: exponent_at(phi, UPPER_INDEX)?,
    })
}

/// Log-log slope `ln(phi_6000/phi_4000) / ln(6000/4000)` between the two
/// bar indices. Unlike `ln phi_N / ln N` it carries no `ln A / ln N` bias
/// from the prefactor of `phi_n ~ A n^a`.
pub fn exponent_slope(phi: &[f64]) -> Result<f64> {
    need(phi, UPPER_INDEX)?;
    Ok((phi[UPPER_INDEX] / phi[LOWER_INDEX]).ln() / (UPPER_INDEX as f64 / LOWER_INDEX as f64).ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gauss_bonnet_model_sequences() {
        let lin: Vec<f64> = (0..20_002).map(|n| n as f64 + 1.0).collect();
        let n = 20_000;
        let exact =
            4.0 * PI * (n as f64 + 1.0) * ((n as f64 + 2.0) / (n as f64 + 1.0) - (n as f64 + 1.0) / (n as f64 + 2.0));
        assert_relative_eq!(gauss_bonnet_estimate(&lin, n).unwrap(), exact, max_relative = 1e-12);
        assert_relative_eq!(exact, 8.0 * PI, max_relative = 1e-4);
        let sq: Vec<f64> = lin.iter().map(|v| v * v).collect();
        assert_relative_eq!(gauss_bonnet_estimate(&sq, n).unwrap(), 16.0 * PI, max_relative = 1e-4);
        assert_eq!(gauss_bonnet_estimate(&[2.0; 5], 3).unwrap(), 0.0);
        assert!(gauss_bonnet_estimate(&[1.0, 2.0], 1).is_err());
    }

    #[test]
    fn telescoping_on_linear_sequence() {
        let lin: Vec<f64> = (0..12).map(|n| n as f64 + 1.0).collect();
        assert!(telescoping_check(&lin, 10).unwrap().difference.abs() < 1e-12);
    }

    #[test]
    fn exponent_model_sequences() {
        let a = 1.7;
        let pure: Vec<f64> = (0..=6000).map(|n| (n as f64).powf(a)).collect();
        let e = exponent_estimate(&pure).unwrap();
        assert_relative_eq!(e.a_hat, a, max_relative = 1e-14);
        assert_relative_eq!(e.bar_low, a, max_relative = 1e-14);
        let scaled: Vec<f64> = pure.iter().map(|v| 3.0 * v).collect();
        let e = exponent_estimate(&scaled).unwrap();
        assert_relative_eq!(e.a_hat, a + 3f64.ln() / 5000f64.ln(), max_relative = 1e-14);
        assert!(e.brackets());
        assert_relative_eq!(exponent_slope(&scaled).unwrap(), a, max_relative = 1e-13);
        assert!(matches!(
            exponent_estimate(&pure[..6000]),
            Err(Error::InsufficientLength { needed: 6001, .. })
        ));
    }
}
