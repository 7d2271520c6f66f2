//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

pub mod jet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

/// `L_0(x) .. L_n(x)` by the three-term recurrence.
pub fn laguerre_table(n: usize, x: f64) -> Vec<f64> {
    let mut l = vec![1.0, 1.0 - x];
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 - x) * l[k] - kf * l[k - 1]) / (kf + 1.0);
        l.push(next);
    }
    l.truncate(n + 1);
    l
}

/// `(1/(2 pi theta)) int_0^inf 2 pi r r^a f_{n,n}(r) dr` for `n <= n_max`,
/// with `f_{n,n} = 2 (-1)^n L_n(2r^2/theta) exp(-r^2/theta)`.
///
/// Substituting `2r^2/theta = t^2` gives
/// `(theta/2)^(a/2) (-1)^n int_0^inf t^(a+1) L_n(t^2) exp(-t^2/2) dt`,
/// which is smooth for every `a > -2`; composite Simpson on `[0, T]`.
pub fn power_coefficients_by_quadrature(a: f64, n_max: usize, theta: f64) -> Vec<f64> {
    let t_max = (8.0 * n_max as f64 + 200.0).sqrt();
    let intervals = 40_000;
    let h = t_max / intervals as f64;
    let mut acc = vec![0.0; n_max + 1];
    for i in 0..=intervals {
        let t = i as f64 * h;
        let w = if i == 0 || i == intervals {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        let weight = w * t.powf(a + 1.0) * (-0.5 * t * t).exp();
        for (n, l) in laguerre_table(n_max, t * t).into_iter().enumerate() {
            acc[n] += weight * l;
        }
    }
    let scale = (0.5 * theta).powf(0.5 * a) * h / 3.0;
    acc.iter()
        .enumerate()
        .map(|(n, s)| if n % 2 == 0 { 1.0 } else { -1.0 } * scale * s)
        .collect()
}

/// Positive root of `(n+1) x^2 + B x - (n+1) phi_n^2 = 0` by the textbook
/// quadratic formula, with
/// `B = n (phi_{n-1}^2 - phi_n^2)/phi_{n-1} - source`.
pub fn naive_step(n: usize, prev: f64, cur: f64, source: f64) -> f64 {
    let a = (n + 1) as f64;
    let b = if n == 0 {
        -source
    } else {
        n as f64 * (prev * prev - cur * cur) / prev - source
    };
    let c = -a * cur * cur;
    (-b + (b * b - 4.0 * a * c).sqrt()) / (2.0 * a)
}

/// Frame recurrence iterated with [`naive_step`].
pub fn naive_frame_solve(curvature: f64, phi0: f64, len: usize) -> Vec<f64> {
    let mut phi = vec![phi0];
    for n in 0..len - 1 {
        let prev = if n > 0 { phi[n - 1] } else { f64::NAN };
        let cur = phi[n];
        phi.push(naive_step(n, prev, cur, curvature / cur));
    }
    phi
}

pub fn random_positive_sequence(rng: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
    (0..len).map(|_| 10f64.powf(rng.gen_range(-3.0..3.0))).collect()
}

/// `phi_n = scale * (n + shift)^a`.
pub fn model_sequence(a: f64, scale: f64, shift: f64, len: usize) -> Vec<f64> {
    (0..len).map(|n| scale * (n as f64 + shift).powf(a)).collect()
}
