//! Diagonal (radial) expansions `g(r) = sum_n g_n f_{n,n}(r)`.

use crate::error::{invalid, Result};

use super::basis::basis_eval;

/// Terminating hypergeometric sum `2F1(-n, b; c; z)` evaluated term by
/// term. Suffers cancellation for large `n` when `z > 1`; see
/// [`radial_power_coefficients`] for the stable route.
pub fn hyp2f1_terminating(n: usize, b: f64, c: f64, z: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..n {
        let kf = k as f64;
        term *= (kf - n as f64) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        sum += term;
    }
    sum
}

/// Coefficients `c_n = Gamma(1 + a/2) theta^(a/2) 2F1(-n, -a/2; 1; 2)` of
/// `r^a = sum_n c_n f_{n,n}`, for `n < count`.
///
/// The Gamma factor is the projection of `r^a` on `f_{0,0}`; it is 1 for
/// `a = 0` and `a = 2` only.
///
/// The hypergeometric values satisfy the contiguous relation
/// `(n+1) F_{n+1} = (1+a) F_n + n F_{n-1}` with `F_0 = 1`, `F_1 = 1 + a`;
/// for `a > -1` every term is positive, so the forward recurrence is free of
/// the cancellation that ruins the direct sum.
pub fn radial_power_coefficients(exponent: f64, count: usize, theta: f64) -> Result<Vec<f64>> {
    if count == 0 {
        return Err(invalid("count", "must be at least 1"));
    }
    if !(theta.is_finite() && theta > 0.0) {
        return Err(invalid("theta", format!("must be positive, got {theta}")));
    }
    if !(exponent.is_finite() && exponent > -2.0) {
        return Err(invalid("exponent", format!("must exceed -2, got {exponent}")));
    }
    let mut f = Vec::with_capacity(count);
    f.push(1.0);
    if count > 1 {
        f.push(1.0 + exponent);
    }
    for n in 1..count.saturating_sub(1) {
        let next = ((1.0 + exponent) * f[n] + n as f64 * f[n - 1]) / (n as f64 + 1.0);
        f.push(next);
    }
    let scale = libm::tgamma(1.0 + exponent / 2.0) * theta.powf(exponent / 2.0);
    Ok(f.into_iter().map(|v| v * scale).collect())
}

/// Coefficients of `(b + r^2)/A = (1/A) sum_n (2 theta n + b + theta) f_{n,n}`.
pub fn fubini_study_inverse_coefficients(scale: f64, shape: f64, theta: f64, count: usize) -> Vec<f64> {
    (0..count)
        .map(|n| (2.0 * theta * n as f64 + shape + theta) / scale)
        .collect()
}

/// Truncated sums `sum_{n<N} f_{n,n}(r)` and `sum_{n<N} n f_{n,n}(r)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartitionSums {
    /// Plain truncated sums. Since `f_{n,n}(0) = 2 (-1)^n` these oscillate
    /// with `N` instead of converging.
    pub raw_unit: f64,
    pub raw_number: f64,
    /// The same series summed by repeated averaging of the partial sums;
    /// these converge to `1` and `(r^2/theta - 1)/2`.
    pub unit: f64,
    pub number: f64,
}

/// Averages consecutive partial sums `passes` times and returns the last
/// value. Alternating tails cancel, smooth ones are untouched.
pub fn averaged_partial_sum(partial: &[f64], passes: usize) -> f64 {
    let passes = passes.min(partial.len().saturating_sub(1));
    let mut s = partial[partial.len() - 1 - passes..].to_vec();
    for _ in 0..passes {
        for i in 0..s.len() - 1 {
            s[i] = 0.5 * (s[i] + s[i + 1]);
        }
        s.pop();
    }
    s[0]
}

/// Number of averaging passes used by [`partition_sums`] for `count` terms.
pub fn default_passes(count: usize) -> usize {
    count / 4
}

/// Partition-of-unity sums at radius `r` over `count` diagonal elements.
pub fn partition_sums(count: usize, theta: f64, r: f64) -> Result<PartitionSums> {
    if count == 0 {
        return Err(invalid("count", "must be at least 1"));
    }
    let mut unit = Vec::with_capacity(count);
    let mut number = Vec::with_capacity(count);
    let (mut u, mut v) = (0.0, 0.0);
    for n in 0..count {
        let f = basis_eval(n, n, theta, r, 0.0)?.re;
        u += f;
        v += n as f64 * f;
        unit.push(u);
        number.push(v);
    }
    let passes = default_passes(count);
    Ok(PartitionSums {
        raw_unit: u,
        raw_number: v,
        unit: averaged_partial_sum(&unit, passes),
        number: averaged_partial_sum(&number, passes),
    })
}

/// Evaluates `sum_n coeff_n f_{n,n}(r)` from averaged partial sums, like
/// [`partition_sums`]; reliable for `r^2/theta` well below `coeff.len()/4`.
/// Functions that are not smooth at the origin converge slowly.
pub fn eval_radial_series(coeff: &[f64], theta: f64, r: f64) -> Result<f64> {
    if coeff.is_empty() {
        return Err(invalid("coeff", "must not be empty"));
    }
    let mut sum = 0.0;
    let partial = coeff
        .iter()
        .enumerate()
        .map(|(n, c)| {
            sum += c * basis_eval(n, n, theta, r, 0.0)?.re;
            Ok(sum)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(averaged_partial_sum(&partial, default_passes(coeff.len())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn constant_function_is_the_unit() {
        let c = radial_power_coefficients(0.0, 20, 0.7).unwrap();
        assert!(c.iter().all(|&v| (v - 1.0).abs() < 1e-15));
    }

    #[test]
    fn r_squared_coefficients() {
        let theta = 0.3;
        let c = radial_power_coefficients(2.0, 50, theta).unwrap();
        for (n, v) in c.iter().enumerate() {
            assert_relative_eq!(*v, theta * (2.0 * n as f64 + 1.0), max_relative = 1e-13);
        }
    }

    #[test]
    fn fubini_study_inverse_matches_power_expansion() {
        let (a, b, theta) = (2.0, 1.5, 0.4);
        let fs = fubini_study_inverse_coefficients(a, b, theta, 10);
        let r2 = radial_power_coefficients(2.0, 10, theta).unwrap();
        for n in 0..10 {
            assert_relative_eq!(fs[n], (b + r2[n]) / a, max_relative = 1e-14);
        }
    }

    #[test]
    fn recurrence_agrees_with_direct_sum_for_small_n() {
        for a in [0.5, 1.0, 3.0, 2.7] {
            let c = radial_power_coefficients(a, 12, 1.0).unwrap();
            let gamma = libm::tgamma(1.0 + a / 2.0);
            for (n, v) in c.iter().enumerate() {
                let direct = gamma * hyp2f1_terminating(n, -a / 2.0, 1.0, 2.0);
                assert_relative_eq!(*v, direct, max_relative = 1e-10);
            }
        }
    }

    #[test]
    fn power_series_reproduces_powers() {
        let theta = 0.8;
        let c = radial_power_coefficients(2.0, 200, theta).unwrap();
        for r in [0.3, 1.3, 2.5] {
            assert_relative_eq!(eval_radial_series(&c, theta, r).unwrap(), r * r, max_relative = 1e-10);
        }
        // odd powers are not smooth at the origin and converge slowly
        for a in [1.0, 3.0] {
            let c = radial_power_coefficients(a, 400, theta).unwrap();
            for r in [1.3, 2.5] {
                let v = eval_radial_series(&c, theta, r).unwrap();
                assert_relative_eq!(v, r.powf(a), max_relative = 1e-4);
            }
        }
    }

    #[test]
    fn rejects_empty_request() {
        assert!(radial_power_coefficients(1.0, 0, 1.0).is_err());
        assert!(radial_power_coefficients(1.0, 3, -1.0).is_err());
        assert!(radial_power_coefficients(-2.5, 3, 1.0).is_err());
    }

    #[test]
    fn partition_of_unity_near_origin() {
        let p = partition_sums(200, 1.0, 1.5).unwrap();
        assert_relative_eq!(p.unit, 1.0, epsilon = 1e-10);
        assert_relative_eq!(p.number, 0.5 * (2.25 - 1.0), epsilon = 1e-9);
        let origin = partition_sums(7, 1.0, 0.0).unwrap();
        assert_eq!(origin.raw_unit, 2.0);
    }

    #[test]
    fn averaging_sums_an_alternating_series() {
        // 1 - 1/2 + 1/3 - ... = ln 2
        let mut s = 0.0;
        let partial: Vec<f64> = (1..=60)
            .map(|k| {
                s += if k % 2 == 1 { 1.0 } else { -1.0 } / k as f64;
                s
            })
            .collect();
        assert_relative_eq!(averaged_partial_sum(&partial, 30), 2f64.ln(), epsilon = 1e-10);
        assert_eq!(averaged_partial_sum(&[3.0], 5), 3.0);
    }
}
