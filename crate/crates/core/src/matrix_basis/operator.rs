use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{invalid, Error, Result};

/// A truncated element `sum_{m,n < N} c_{mn} f_{m,n}` of the Moyal algebra.
///
/// Besides the coefficients, every operator records
///
/// * `clean`: entries `(m, n)` with `max(m, n) < clean` agree with the
///   untruncated computation. Derivations and the Laplacian couple index
///   `N-1` to the missing index `N`, so each application lowers this bound.
/// * `bandwidth`: an upper bound on `|m - n|` over the nonzero entries.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(
    try_from = "super::json::MatrixOperatorJson",
    into = "super::json::MatrixOperatorJson"
)]
pub struct MatrixOperator {
    pub(super) theta: f64,
    pub(super) coeff: DMatrix<Complex64>,
    pub(super) clean: usize,
    pub(super) bandwidth: usize,
}

pub(super) fn check_theta(theta: f64) -> Result<()> {
    if theta.is_finite() && theta > 0.0 {
        Ok(())
    } else {
        Err(invalid("theta", format!("must be positive, got {theta}")))
    }
}

pub(super) fn measured_bandwidth(coeff: &DMatrix<Complex64>) -> usize {
    let mut w = 0;
    for n in 0..coeff.ncols() {
        for m in 0..coeff.nrows() {
            if coeff[(m, n)] != Complex64::new(0.0, 0.0) {
                w = w.max(m.abs_diff(n));
            }
        }
    }
    w
}

impl MatrixOperator {
    /// Wraps a square coefficient matrix; the whole block is taken as exact.
    pub fn new(theta: f64, coeff: DMatrix<Complex64>) -> Result<Self> {
        check_theta(theta)?;
        if coeff.nrows() != coeff.ncols() || coeff.nrows() == 0 {
            return Err(Error::Mismatch(format!(
                "coefficients must be a non-empty square array, got {}x{}",
                coeff.nrows(),
                coeff.ncols()
            )));
        }
        let bandwidth = measured_bandwidth(&coeff);
        let clean = coeff.nrows();
        Ok(Self {
            theta,
            coeff,
            clean,
            bandwidth,
        })
    }

    pub fn zeros(theta: f64, dim: usize) -> Result<Self> {
        Self::new(theta, DMatrix::zeros(dim, dim))
    }

    /// Truncated unit `sum_{n<N} f_{n,n}`.
    pub fn identity(theta: f64, dim: usize) -> Result<Self> {
        Self::new(theta, DMatrix::identity(dim, dim))
    }

    /// The single basis element `f_{m,n}`.
    pub fn basis_element(theta: f64, dim: usize, m: usize, n: usize) -> Result<Self> {
        if m >= dim || n >= dim {
            return Err(Error::Mismatch(format!("f_({m},{n}) does not fit in dimension {dim}")));
        }
        let mut c = DMatrix::zeros(dim, dim);
        c[(m, n)] = Complex64::new(1.0, 0.0);
        Self::new(theta, c)
    }

    /// Overrides the truncation bookkeeping.
    pub fn with_clean(mut self, clean: usize) -> Self {
        self.clean = clean.min(self.dim());
        self
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn dim(&self) -> usize {
        self.coeff.nrows()
    }

    pub fn coeff(&self) -> &DMatrix<Complex64> {
        &self.coeff
    }

    pub fn get(&self, m: usize, n: usize) -> Complex64 {
        self.coeff[(m, n)]
    }

    /// Number of leading indices whose entries are free of truncation error.
    pub fn clean_dim(&self) -> usize {
        self.clean
    }

    pub fn bandwidth(&self) -> usize {
        self.bandwidth
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::Mismatch(format!(
                "dimensions differ: {} vs {}",
                self.dim(),
                other.dim()
            )));
        }
        if self.theta != other.theta {
            return Err(Error::Mismatch(format!(
                "deformation parameters differ: {} vs {}",
                self.theta, other.theta
            )));
        }
        Ok(())
    }

    fn derived(&self, coeff: DMatrix<Complex64>, clean: usize, bandwidth: usize) -> Self {
        let cap = self.dim() - 1;
        Self {
            theta: self.theta,
            coeff,
            clean: clean.min(self.dim()),
            bandwidth: bandwidth.min(cap),
        }
    }

    /// Hermitian conjugate, using `f_{m,n}^* = f_{n,m}`.
    pub fn adjoint(&self) -> Self {
        self.derived(self.coeff.adjoint(), self.clean, self.bandwidth)
    }

    /// Largest `|c_{mn} - conj(c_{nm})|` over indices below `limit`.
    pub fn self_adjointness_defect(&self, limit: usize) -> f64 {
        let limit = limit.min(self.dim());
        let mut worst: f64 = 0.0;
        for m in 0..limit {
            for n in 0..limit {
                worst = worst.max((self.coeff[(m, n)] - self.coeff[(n, m)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_self_adjoint(&self, tol: f64) -> bool {
        self.self_adjointness_defect(self.dim()) <= tol
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        self.derived(self.coeff.map(|c| c * factor), self.clean, self.bandwidth)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.derived(
            &self.coeff + &other.coeff,
            self.clean.min(other.clean),
            self.bandwidth.max(other.bandwidth),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.derived(
            &self.coeff - &other.coeff,
            self.clean.min(other.clean),
            self.bandwidth.max(other.bandwidth),
        ))
    }

    /// Moyal product. In the matrix basis `f_{m,n} * f_{k,l} = delta_{kn}
    /// f_{m,l}`, so this is the matrix product of the coefficient arrays.
    pub fn star(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let (wa, wb) = (self.bandwidth, other.bandwidth);
        let n = self.dim();
        let coeff = if 4 * (wa + wb) < n {
            banded_product(&self.coeff, wa, &other.coeff, wb)
        } else {
            &self.coeff * &other.coeff
        };
        // An entry (m, n) sums over k <= min(m + wa, n + wb), so exactness
        // is lost for the last min(wa, wb) clean indices.
        let clean = self.clean.min(other.clean).saturating_sub(wa.min(wb));
        Ok(self.derived(coeff, clean, wa + wb))
    }

    /// Trace `tau(A) = 2 pi theta sum_n c_{nn}`.
    pub fn trace(&self) -> Complex64 {
        self.coeff.trace() * (2.0 * PI * self.theta)
    }

    /// `(dA)(m,n) = sqrt((n+1)/theta) A(m,n+1) - sqrt(m/theta) A(m-1,n)`.
    pub fn partial(&self) -> Self {
        let n_dim = self.dim();
        let inv = 1.0 / self.theta;
        let c = DMatrix::from_fn(n_dim, n_dim, |m, n| {
            let mut v = Complex64::new(0.0, 0.0);
            if n + 1 < n_dim {
                v += self.coeff[(m, n + 1)] * ((n + 1) as f64 * inv).sqrt();
            }
            if m > 0 {
                v -= self.coeff[(m - 1, n)] * (m as f64 * inv).sqrt();
            }
            v
        });
        self.derived(c, self.clean.saturating_sub(1), self.bandwidth + 1)
    }

    /// `(dbar A)(m,n) = sqrt((m+1)/theta) A(m+1,n) - sqrt(n/theta) A(m,n-1)`.
    pub fn partial_bar(&self) -> Self {
        let n_dim = self.dim();
        let inv = 1.0 / self.theta;
        let c = DMatrix::from_fn(n_dim, n_dim, |m, n| {
            let mut v = Complex64::new(0.0, 0.0);
            if m + 1 < n_dim {
                v += self.coeff[(m + 1, n)] * ((m + 1) as f64 * inv).sqrt();
            }
            if n > 0 {
                v -= self.coeff[(m, n - 1)] * (n as f64 * inv).sqrt();
            }
            v
        });
        self.derived(c, self.clean.saturating_sub(1), self.bandwidth + 1)
    }

    /// Real derivation along `x_1`: `(d + dbar)/sqrt(2)`.
    pub fn delta_1(&self) -> Self {
        let d = self.partial();
        let db = self.partial_bar();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        self.derived((d.coeff + db.coeff).map(|c| c * s), d.clean, d.bandwidth)
    }

    /// Real derivation along `x_2`: `i (d - dbar)/sqrt(2)`.
    pub fn delta_2(&self) -> Self {
        let d = self.partial();
        let db = self.partial_bar();
        let s = Complex64::new(0.0, std::f64::consts::FRAC_1_SQRT_2);
        self.derived((d.coeff - db.coeff).map(|c| c * s), d.clean, d.bandwidth)
    }

    /// Flat Laplacian `delta_1^2 + delta_2^2`:
    /// `(Delta A)(m,n) = (2/theta)(-(m+n+1) A(m,n) + sqrt(mn) A(m-1,n-1)
    ///  + sqrt((m+1)(n+1)) A(m+1,n+1))`.
    pub fn laplacian(&self) -> Self {
        let n_dim = self.dim();
        let pre = 2.0 / self.theta;
        let c = DMatrix::from_fn(n_dim, n_dim, |m, n| {
            let mut v = -self.coeff[(m, n)] * (m + n + 1) as f64;
            if m > 0 && n > 0 {
                v += self.coeff[(m - 1, n - 1)] * ((m * n) as f64).sqrt();
            }
            if m + 1 < n_dim && n + 1 < n_dim {
                v += self.coeff[(m + 1, n + 1)] * (((m + 1) * (n + 1)) as f64).sqrt();
            }
            v * pre
        });
        self.derived(c, self.clean.saturating_sub(1), self.bandwidth)
    }

    /// Largest off-diagonal magnitude among indices below `limit`.
    pub fn max_off_diagonal(&self, limit: usize) -> f64 {
        let limit = limit.min(self.dim());
        let mut worst: f64 = 0.0;
        for m in 0..limit {
            for n in 0..limit {
                if m != n {
                    worst = worst.max(self.coeff[(m, n)].norm());
                }
            }
        }
        worst
    }

    /// Diagonal coefficients.
    pub fn diagonal(&self) -> Vec<Complex64> {
        self.coeff.diagonal().iter().copied().collect()
    }
}

fn banded_product(a: &DMatrix<Complex64>, wa: usize, b: &DMatrix<Complex64>, wb: usize) -> DMatrix<Complex64> {
    let n = a.nrows();
    let w = wa + wb;
    let mut c = DMatrix::zeros(n, n);
    for row in 0..n {
        let lo_col = row.saturating_sub(w);
        let hi_col = (row + w).min(n - 1);
        for col in lo_col..=hi_col {
            let lo = row.saturating_sub(wa).max(col.saturating_sub(wb));
            let hi = (row + wa).min(col + wb).min(n - 1);
            let mut acc = Complex64::new(0.0, 0.0);
            for k in lo..=hi {
                acc += a[(row, k)] * b[(k, col)];
            }
            c[(row, col)] = acc;
        }
    }
    c
}

/// A radial element `h = sum_n phi_n f_{n,n}`.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(
    try_from = "super::json::RadialOperatorJson",
    into = "super::json::RadialOperatorJson"
)]
pub struct RadialOperator {
    pub(super) theta: f64,
    pub(super) phi: Vec<f64>,
}

impl RadialOperator {
    pub fn new(theta: f64, phi: Vec<f64>) -> Result<Self> {
        check_theta(theta)?;
        if phi.is_empty() {
            return Err(invalid("phi", "must contain at least one coefficient"));
        }
        if let Some(i) = phi.iter().position(|v| !v.is_finite()) {
            return Err(invalid("phi", format!("coefficient {i} is not finite")));
        }
        Ok(Self { theta, phi })
    }

    pub fn unit(theta: f64, dim: usize) -> Result<Self> {
        Self::new(theta, vec![1.0; dim])
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn dim(&self) -> usize {
        self.phi.len()
    }

    pub fn phi(&self) -> &[f64] {
        &self.phi
    }

    /// The diagonal elements are orthogonal rank-one projections, so `h` is
    /// positive exactly when every coefficient is.
    pub fn is_positive(&self) -> bool {
        self.phi.iter().all(|&v| v > 0.0)
    }

    /// Pointwise product of the coefficient sequences.
    pub fn star(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() || self.theta != other.theta {
            return Err(Error::Mismatch("radial operands differ in dimension or theta".into()));
        }
        Self::new(
            self.theta,
            self.phi.iter().zip(&other.phi).map(|(a, b)| a * b).collect(),
        )
    }

    /// Moyal inverse: reciprocal coefficients.
    pub fn inverse(&self) -> Result<Self> {
        if let Some((index, &value)) = self.phi.iter().enumerate().find(|(_, &v)| v <= 0.0) {
            return Err(Error::NotInvertible { index, value });
        }
        Self::new(self.theta, self.phi.iter().map(|v| v.recip()).collect())
    }

    pub fn trace(&self) -> f64 {
        2.0 * PI * self.theta * self.phi.iter().sum::<f64>()
    }

    pub fn to_matrix(&self) -> MatrixOperator {
        let n = self.dim();
        let coeff = DMatrix::from_fn(n, n, |m, k| {
            if m == k {
                Complex64::new(self.phi[m], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        MatrixOperator {
            theta: self.theta,
            coeff,
            clean: n,
            bandwidth: 0,
        }
    }
}
