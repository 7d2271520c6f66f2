use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::real::Precision;

use super::estimate::{exponent_estimate, ExponentEstimate, UPPER_INDEX};
use super::problem::RecurrenceProblem;
use super::solver::solve;

/// Settings of the shooting search for the `a = 1` seed. The scan covers
/// `phi0 / sqrt(R)` in `[lower, upper]`, log-spaced.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeedSearch {
    pub target: f64,
    pub tolerance: f64,
    pub lower: f64,
    pub upper: f64,
    pub scan_points: usize,
    pub precision: Precision,
    pub max_bisections: usize,
}

impl Default for SeedSearch {
    fn default() -> Self {
        Self {
            target: 1.0,
            tolerance: 1e-3,
            lower: 1e-2,
            upper: 1e2,
            scan_points: 50,
            precision: Precision::Standard,
            max_bisections: 200,
        }
    }
}

impl SeedSearch {
    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }
}

/// Result of [`find_fs_seed`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeedResult {
    pub seed: f64,
    pub exponent: ExponentEstimate,
    /// `(phi0, a_hat)` over the scan; `a_hat` is NaN where the solve failed.
    pub scan: Vec<(f64, f64)>,
    pub bisections: usize,
}

/// Central exponent estimate of the frame solution started at `phi0`.
pub fn exponent_for_seed(curvature: f64, phi0: f64, precision: Precision) -> Result<ExponentEstimate> {
    let p = RecurrenceProblem::frame(curvature, phi0, UPPER_INDEX + 1).with_precision(precision);
    exponent_estimate(&solve(&p)?.phi)
}

fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    (0..count)
        .map(|i| (a + (b - a) * i as f64 / (count - 1) as f64).exp())
        .collect()
}

/// Scans `phi0` and returns `(phi0, a_hat)`, computed concurrently and
/// returned in grid order.
pub fn scan_exponents(curvature: f64, seeds: &[f64], precision: Precision) -> Vec<(f64, f64)> {
    seeds
        .par_iter()
        .map(|&s| {
            let a = exponent_for_seed(curvature, s, precision)
                .map(|e| e.a_hat)
                .unwrap_or(f64::NAN);
            (s, if a.is_finite() { a } else { f64::NAN })
        })
        .collect()
}

/// Seed `phi0*` whose central exponent estimate equals `search.target` within
/// `search.tolerance`.
///
/// Bisection in `ln(phi0/sqrt(R))` needs the target to be crossed exactly
/// once on the scan, with the exponent monotone across the bracket and its
/// neighbouring scan points. Seeds whose solve overflows are recorded with
/// a NaN exponent and skipped.
pub fn find_fs_seed_with(curvature: f64, search: &SeedSearch) -> Result<SeedResult> {
    if !(curvature.is_finite() && curvature > 0.0) {
        return Err(invalid("R", format!("must be positive, got {curvature}")));
    }
    if !(search.tolerance > 0.0) {
        return Err(invalid("tolerance", "must be positive"));
    }
    if !(search.lower > 0.0 && search.upper > search.lower) || search.scan_points < 2 {
        return Err(invalid("scan range", "need 0 < lower < upper and at least 2 points"));
    }
    let root = curvature.sqrt();
    let dimless = log_grid(search.lower, search.upper, search.scan_points);
    let seeds: Vec<f64> = dimless.iter().map(|s| s * root).collect();
    let scan = scan_exponents(curvature, &seeds, search.precision);

    let ok: Vec<(f64, f64)> = dimless
        .iter()
        .zip(&scan)
        .filter(|(_, (_, a))| a.is_finite())
        .map(|(s, (_, a))| (*s, *a))
        .collect();
    let t = search.target;
    let crossings: Vec<usize> = (0..ok.len().saturating_sub(1))
        .filter(|&i| (ok[i].1 - t) * (ok[i + 1].1 - t) <= 0.0)
        .collect();
    let i = match crossings.as_slice() {
        [] => return Err(Error::NoBracket { trace: scan }),
        [i] => *i,
        _ => return Err(Error::NotMonotone { trace: scan }),
    };
    // The exponent must keep one direction across the bracket and its
    // neighbours on the scan.
    let window = &ok[i.saturating_sub(1)..(i + 3).min(ok.len())];
    let rising = window.windows(2).all(|w| w[1].1 > w[0].1);
    let falling = window.windows(2).all(|w| w[1].1 < w[0].1);
    if !(rising || falling) {
        return Err(Error::NotMonotone { trace: scan });
    }
    let (mut lo, mut a_lo) = ok[i];
    let (mut hi, _) = ok[i + 1];
    let mut bisections = 0;
    while bisections < search.max_bisections {
        let mid = (lo * hi).sqrt();
        if mid <= lo || mid >= hi {
            break;
        }
        let a_mid = exponent_for_seed(curvature, mid * root, search.precision)?.a_hat;
        bisections += 1;
        if (a_mid - t) * (a_lo - t) <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
            a_lo = a_mid;
        }
    }
    let candidates = [lo, hi];
    let mut best: Option<(f64, ExponentEstimate)> = None;
    for s in candidates {
        let e = exponent_for_seed(curvature, s * root, search.precision)?;
        if best.is_none_or(|(_, b)| (e.a_hat - t).abs() < (b.a_hat - t).abs()) {
            best = Some((s * root, e));
        }
    }
    let (seed, exponent) = best.expect("two candidates");
    if (exponent.a_hat - t).abs() > search.tolerance {
        return Err(Error::NoBracket { trace: scan });
    }
    Ok(SeedResult {
        seed,
        exponent,
        scan,
        bisections,
    })
}

/// [`find_fs_seed_with`] using the default scan and the given tolerance.
pub fn find_fs_seed(curvature: f64, tolerance: f64) -> Result<SeedResult> {
    find_fs_seed_with(curvature, &SeedSearch::default().with_tolerance(tolerance))
}
