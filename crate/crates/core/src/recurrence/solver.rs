use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::real::{Extended, Precision, Real};

use super::estimate::{exponent_estimate, ratio_gap, ExponentEstimate, UPPER_INDEX};
use super::problem::{RecurrenceProblem, Variant};

/// Relative per-step residual allowed, in units of the working roundoff.
pub const RESIDUAL_ULPS: f64 = 64.0;

/// Right-hand side of the recurrence: `coeff/phi_n` (frame) or
/// `-coeff/phi_n^2` (Rosenberg).
struct Source<T> {
    variant: Variant,
    coeff: T,
}

impl<T: Real> Source<T> {
    fn of(p: &RecurrenceProblem) -> Self {
        let coeff = match p.variant {
            Variant::Frame => p.curvature,
            Variant::Rosenberg => p.c,
        };
        Self {
            variant: p.variant,
            coeff: T::from_f64(coeff),
        }
    }

    /// Source for `psi_n = phi_n / phi_0`, which solves the same recurrence
    /// with `R/phi_0^2` or `c/phi_0^3` and starts at 1.
    fn normalized(p: &RecurrenceProblem) -> Self {
        let s = T::from_f64(p.phi0);
        let raw = Self::of(p);
        let coeff = match p.variant {
            Variant::Frame => raw.coeff / (s.clone() * s),
            Variant::Rosenberg => raw.coeff / (s.clone() * s.clone() * s),
        };
        Self {
            variant: p.variant,
            coeff,
        }
    }

    fn at(&self, cur: &T) -> T {
        match self.variant {
            Variant::Frame => self.coeff.clone() / cur.clone(),
            Variant::Rosenberg => -self.coeff.clone() / (cur.clone() * cur.clone()),
        }
    }
}

/// `n (phi_{n-1}^2 - phi_n^2) / phi_{n-1}`; absent at `n = 0`.
fn backward<T: Real>(n: usize, prev: Option<&T>, cur: &T) -> T {
    match prev {
        Some(prev) if n > 0 => {
            T::from_usize(n) * (prev.clone() * prev.clone() - cur.clone() * cur.clone()) / prev.clone()
        }
        _ => T::from_f64(0.0),
    }
}

/// Positive root of `(n+1) x^2 + B x - (n+1) phi_n^2 = 0`.
///
/// The roots have product `-phi_n^2`, so exactly one is positive. For
/// `B > 0` the textbook formula subtracts nearly equal numbers and the
/// equivalent `2 (n+1) phi_n^2 / (B + sqrt(D))` is used instead.
fn positive_root<T: Real>(n: usize, b: T, cur: &T) -> T {
    let m = T::from_usize(n + 1);
    let two = T::from_f64(2.0);
    let q = m.clone() * cur.clone() * cur.clone();
    let disc = b.clone() * b.clone() + T::from_f64(4.0) * m.clone() * q.clone();
    let root = disc.sqrt();
    if b <= T::from_f64(0.0) {
        (root - b) / (two * m)
    } else {
        two * q / (b + root)
    }
}

fn next_term<T: Real>(src: &Source<T>, n: usize, prev: Option<&T>, cur: &T) -> T {
    let b = backward(n, prev, cur) - src.at(cur);
    positive_root(n, b, cur)
}

/// Residual of equation `n` and the magnitude of its terms.
fn equation_residual<T: Real>(src: &Source<T>, n: usize, prev: Option<&T>, cur: &T, next: &T) -> (T, T) {
    let forward = T::from_usize(n + 1) * (next.clone() * next.clone() - cur.clone() * cur.clone()) / next.clone();
    let back = backward(n, prev, cur);
    let src = src.at(cur);
    let scale = T::from_usize(n + 1) * (next.clone() + cur.clone() * cur.clone() / next.clone())
        + match prev {
            Some(prev) if n > 0 => T::from_usize(n) * (prev.clone() + cur.clone() * cur.clone() / prev.clone()),
            _ => T::from_f64(0.0),
        }
        + src.abs();
    (forward + back - src, scale)
}

fn check_positive(step: usize, v: f64) -> Result<f64> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(Error::NonFinite { step })
    }
}

/// `phi_1` from `phi_0` (frame: `phi_1^2 - phi_0^2 = R phi_1/phi_0`).
pub fn first_step(phi0: f64, curvature: f64) -> Result<f64> {
    let p = RecurrenceProblem::frame(curvature, phi0, 2);
    p.validate()?;
    check_positive(1, next_term::<f64>(&Source::of(&p), 0, None, &phi0))
}

/// `phi_{n+1}` from `phi_{n-1}` and `phi_n`. At `n = 0` `phi_prev` is
/// ignored.
pub fn step(n: usize, phi_prev: f64, phi_cur: f64, problem: &RecurrenceProblem) -> Result<f64> {
    problem.validate()?;
    if !(phi_cur.is_finite() && phi_cur > 0.0) || (n > 0 && !(phi_prev.is_finite() && phi_prev > 0.0)) {
        return Err(crate::error::invalid(
            "phi",
            format!("recurrence inputs must be positive, got ({phi_prev}, {phi_cur})"),
        ));
    }
    check_positive(n + 1, next_term(&Source::of(problem), n, Some(&phi_prev), &phi_cur))
}

/// Diagnostics of the finite-volume condition: `phi_n^-2` is summable when
/// `phi_n` grows faster than `sqrt(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VolumeDiagnostic {
    /// `sum_n phi_n^-2` over the computed terms.
    pub inverse_square_sum: f64,
    /// `ln(phi_M / phi_{M/2}) / ln 2` with `M` the last index.
    pub tail_growth_exponent: f64,
    pub summable: bool,
}

impl VolumeDiagnostic {
    fn of(phi: &[f64]) -> Self {
        let inverse_square_sum = phi.iter().map(|v| v.powi(-2)).sum();
        let m = phi.len() - 1;
        let tail_growth_exponent = if m >= 2 {
            (phi[m] / phi[m / 2]).ln() / (m as f64 / (m / 2) as f64).ln()
        } else {
            f64::NAN
        };
        Self {
            inverse_square_sum,
            tail_growth_exponent,
            summable: tail_growth_exponent > 0.5,
        }
    }
}

/// Output of [`solve`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecurrenceSolution {
    pub problem: RecurrenceProblem,
    pub phi: Vec<f64>,
    /// `4 pi (n+1) (phi_{n+1}/phi_n - phi_n/phi_{n+1})` for `n < N - 1`.
    pub gb_partials: Vec<f64>,
    /// Relative residual of equation `n` (the one fixing `phi_{n+1}`),
    /// evaluated in the working precision.
    pub residuals: Vec<f64>,
    pub residual_bound: f64,
    /// Whether the sequence is strictly increasing.
    pub monotone: bool,
    /// Exponent estimator; present once `phi_6000` is available.
    pub exponent: Option<ExponentEstimate>,
    pub volume: VolumeDiagnostic,
}

impl RecurrenceSolution {
    pub fn residuals_within_bound(&self) -> bool {
        self.residuals.iter().all(|r| *r <= self.residual_bound)
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }

    pub fn gauss_bonnet_estimate(&self, n: usize) -> Result<f64> {
        super::estimate::gauss_bonnet_estimate(&self.phi, n)
    }
}

/// Terms computed before the first failing step, with the failure.
struct Run {
    phi: Vec<f64>,
    residuals: Vec<f64>,
    failure: Option<Error>,
}

impl Run {
    fn into_result(self) -> Result<(Vec<f64>, Vec<f64>)> {
        match self.failure {
            Some(e) => Err(e),
            None => Ok((self.phi, self.residuals)),
        }
    }
}

/// Iterates `psi_n = phi_n / phi_0`. Working in units of the seed makes
/// `(phi0, R) -> (lambda phi0, lambda^2 R)` an exact symmetry of the
/// computation up to the rounding of the rescaled inputs.
fn run<T: Real>(p: &RecurrenceProblem) -> Run {
    let src = Source::<T>::normalized(p);
    let seed = T::from_f64(p.phi0);
    let mut phi: Vec<T> = Vec::with_capacity(p.len);
    phi.push(T::from_f64(1.0));
    let mut residuals = Vec::with_capacity(p.len.saturating_sub(1));
    let mut failure = None;
    for n in 0..p.len - 1 {
        let prev = if n > 0 { Some(&phi[n - 1]) } else { None };
        let cur = &phi[n];
        let next = next_term(&src, n, prev, cur);
        if let Err(e) = check_positive(n + 1, (next.clone() * seed.clone()).to_f64()) {
            failure = Some(e);
            break;
        }
        let (res, scale) = equation_residual(&src, n, prev, cur, &next);
        residuals.push((res.abs() / scale).to_f64());
        phi.push(next);
    }
    Run {
        phi: phi.into_iter().map(|v| (v * seed.clone()).to_f64()).collect(),
        residuals,
        failure,
    }
}

fn run_in(p: &RecurrenceProblem) -> Run {
    match p.precision {
        Precision::Standard => run::<f64>(p),
        Precision::Extended => run::<Extended>(p),
    }
}

/// Terms `phi_0, phi_1, ...` up to the first step without a positive
/// finite root, together with that step's error. Useful for variants whose
/// sequences collapse, where [`solve`] only reports the failure.
pub fn solve_prefix(problem: &RecurrenceProblem) -> Result<(Vec<f64>, Option<Error>)> {
    problem.validate()?;
    let r = run_in(problem);
    Ok((r.phi, r.failure))
}

/// Runs the recurrence from `phi_0`, taking the positive root at each step.
pub fn solve(problem: &RecurrenceProblem) -> Result<RecurrenceSolution> {
    problem.validate()?;
    let (phi, residuals) = run_in(problem).into_result()?;
    let gb_partials = phi
        .windows(2)
        .enumerate()
        .map(|(n, w)| 4.0 * PI * (n + 1) as f64 * ratio_gap(w[0], w[1]))
        .collect();
    let monotone = phi.windows(2).all(|w| w[1] > w[0]);
    let exponent = if phi.len() > UPPER_INDEX {
        Some(exponent_estimate(&phi)?)
    } else {
        None
    };
    let volume = VolumeDiagnostic::of(&phi);
    Ok(RecurrenceSolution {
        problem: *problem,
        residual_bound: RESIDUAL_ULPS * problem.precision.unit_roundoff(),
        phi,
        gb_partials,
        residuals,
        monotone,
        exponent,
        volume,
    })
}

/// Standard and extended values of `phi_index` for the same problem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrecisionCheck {
    pub index: usize,
    pub standard: f64,
    pub extended: f64,
}

impl PrecisionCheck {
    pub fn relative_difference(&self) -> f64 {
        ((self.standard - self.extended) / self.extended).abs()
    }
}

/// Re-runs `problem` in both precisions and compares `phi_index`.
pub fn precision_check(problem: &RecurrenceProblem, index: usize) -> Result<PrecisionCheck> {
    let p = problem.with_len(problem.len.max(index + 1));
    let standard = run::<f64>(&p).into_result()?.0[index];
    let extended = run::<Extended>(&p).into_result()?.0[index];
    Ok(PrecisionCheck {
        index,
        standard,
        extended,
    })
}
