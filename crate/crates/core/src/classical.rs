//! Commutative reference geometry: radially symmetric conformal metrics
//! `k(r)^2 (dx^2 + dy^2)` on the plane.
//!
//! The constant-curvature family `k(r) = A r^(a-1) / (b + r^(2a))` has closed
//! forms for its curvature, volume and Gauss-Bonnet integral; the functions
//! here evaluate those closed forms and the general radial curvature formula
//! they are checked against.
//!
//! The curvature combination `k'^2 - k k'/r - k k''` cancels by a factor of
//! roughly `r^(2a)/b` at large `r` (and `b/r^(2a)` at small `r`), so it is
//! evaluated in extended precision. Profiles that can supply their
//! derivatives analytically do so through [`RadialProfile::jet`]; all others
//! fall back to Richardson-extrapolated central differences.

use std::f64::consts::PI;

use crate::real::{Extended, Real};

use crate::error::{invalid, Error, Result};

/// Radius at which the inner Gauss-Bonnet boundary term is evaluated.
pub const INNER_BOUNDARY_RADIUS: f64 = 1e-6;

/// Relative change of the Gauss-Bonnet boundary evaluation between `r_max`
/// and `2 r_max` above which the cutoff is reported as too small.
pub const BOUNDARY_CONVERGENCE_TOL: f64 = 1e-4;

/// Parameters `(A, a, b)` of the constant-curvature family.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ClassicalFactorParams {
    #[serde(rename = "A")]
    scale: f64,
    #[serde(rename = "a")]
    exponent: f64,
    #[serde(rename = "b")]
    shape: f64,
}

impl ClassicalFactorParams {
    pub fn new(scale: f64, exponent: f64, shape: f64) -> Result<Self> {
        if !(scale.is_finite() && scale > 0.0) {
            return Err(invalid("A", format!("must be positive, got {scale}")));
        }
        if !(exponent.is_finite() && exponent >= 1.0) {
            return Err(invalid("a", format!("must be at least 1, got {exponent}")));
        }
        if !(shape.is_finite() && shape > 0.0) {
            return Err(invalid("b", format!("must be positive, got {shape}")));
        }
        Ok(Self { scale, exponent, shape })
    }

    /// Overall scale `A`.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Exponent `a`.
    pub fn exponent(&self) -> f64 {
        self.exponent
    }

    /// Shape parameter `b`.
    pub fn shape(&self) -> f64 {
        self.shape
    }

    /// Limit of `-r k'/k` as `r -> 0+`.
    pub fn origin_boundary_limit(&self) -> f64 {
        -(self.exponent - 1.0)
    }

    /// Limit of `-r k'/k` as `r -> infinity`.
    pub fn infinity_boundary_limit(&self) -> f64 {
        self.exponent + 1.0
    }

    /// `q = r^(2a) / (b + r^(2a))` and `1 - q`, each computed without
    /// subtraction.
    fn split(&self, r: &Extended) -> (Extended, Extended) {
        let ratio = r.powf(&x(2.0 * self.exponent)) / x(self.shape);
        let one = x(1.0);
        if ratio > one {
            let inv = ratio.recip();
            let den = one.clone() + inv.clone();
            (one / den.clone(), inv / den)
        } else {
            let den = one.clone() + ratio.clone();
            (ratio / den.clone(), one / den)
        }
    }
}

/// Value and first two radial derivatives of a profile.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialJet {
    pub value: Extended,
    pub d1: Extended,
    pub d2: Extended,
}

fn x(v: f64) -> Extended {
    Extended::from_f64(v)
}

/// A positive radial conformal factor `r -> k(r)`.
pub trait RadialProfile {
    fn value(&self, r: f64) -> f64;

    /// Value at an extended-precision radius. Profiles with a closed form
    /// should override this so finite differences keep their accuracy.
    fn value_extended(&self, r: &Extended) -> Extended {
        x(self.value(r.to_f64()))
    }

    /// Analytic value and derivatives, if available.
    fn jet(&self, _r: f64) -> Option<RadialJet> {
        None
    }

    /// Central-difference step at `r`. Profiles that override
    /// [`value_extended`](Self::value_extended) with a genuinely extended
    /// evaluation should return [`extended_difference_step`].
    fn difference_step(&self, r: f64) -> f64 {
        finite_difference_step(r)
    }
}

impl RadialProfile for ClassicalFactorParams {
    fn value(&self, r: f64) -> f64 {
        self.scale * r.powf(self.exponent - 1.0) / (self.shape + r.powf(2.0 * self.exponent))
    }

    fn value_extended(&self, r: &Extended) -> Extended {
        let (_, one_minus_q) = self.split(r);
        x(self.scale) * r.powf(&x(self.exponent - 1.0)) * one_minus_q / x(self.shape)
    }

    fn jet(&self, r: f64) -> Option<RadialJet> {
        let rr = x(r);
        let a = self.exponent;
        let (q, one_minus_q) = self.split(&rr);
        let k = self.value_extended(&rr);
        // log-derivatives: k'/k and (k'/k)'
        let l1 = (x(a - 1.0) - x(2.0 * a) * q.clone()) / rr.clone();
        let dl1 = (x(1.0 - a) - x(2.0 * a) * (x(2.0 * a) * q.clone() * one_minus_q - q)) / (rr.clone() * rr);
        Some(RadialJet {
            d1: k.clone() * l1.clone(),
            d2: k.clone() * (dl1 + l1.clone() * l1),
            value: k,
        })
    }

    fn difference_step(&self, r: f64) -> f64 {
        extended_difference_step(r)
    }
}

/// The constant profile `k = c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantProfile(pub f64);

impl RadialProfile for ConstantProfile {
    fn value(&self, _r: f64) -> f64 {
        self.0
    }

    fn jet(&self, _r: f64) -> Option<RadialJet> {
        Some(RadialJet {
            value: x(self.0),
            d1: x(0.0),
            d2: x(0.0),
        })
    }
}

/// Profile given by a closure; derivatives by finite differences.
#[derive(Clone, Copy)]
pub struct FnProfile<F>(pub F);

impl<F: Fn(f64) -> f64> RadialProfile for FnProfile<F> {
    fn value(&self, r: f64) -> f64 {
        (self.0)(r)
    }
}

/// `k(r) = A r^(a-1) / (b + r^(2a))`.
pub fn family_factor(p: &ClassicalFactorParams, r: f64) -> Result<f64> {
    let k = if r > 0.0 { p.value(r) } else { f64::NAN };
    if k.is_finite() && r > 0.0 {
        Ok(k)
    } else {
        Err(Error::Domain {
            quantity: "family factor",
            r,
        })
    }
}

/// Central-difference step for profiles evaluated in binary64.
pub fn finite_difference_step(r: f64) -> f64 {
    (1e-5 * (1.0 + r)).min(0.25 * r)
}

/// Central-difference step for profiles with extended-precision values.
///
/// Near the origin the curvature numerator of `r^(a-1)`-like profiles
/// cancels to a relative size `r^(2a)`, so the differences must be far more
/// accurate than binary64 steps allow.
pub fn extended_difference_step(r: f64) -> f64 {
    (1e-9 * (1.0 + r)).min(0.25 * r)
}

/// Richardson-extrapolated central differences in extended precision.
pub fn finite_difference_jet<K: RadialProfile + ?Sized>(k: &K, r: f64) -> RadialJet {
    let rr = x(r);
    let f0 = k.value_extended(&rr);
    let central = |h: Extended| {
        let fp = k.value_extended(&(rr.clone() + h.clone()));
        let fm = k.value_extended(&(rr.clone() - h.clone()));
        (
            (fp.clone() - fm.clone()) / (x(2.0) * h.clone()),
            (fp - x(2.0) * f0.clone() + fm) / (h.clone() * h),
        )
    };
    let h = k.difference_step(r);
    let (d1_h, d2_h) = central(x(h));
    let (d1_half, d2_half) = central(x(h / 2.0));
    RadialJet {
        value: f0.clone(),
        d1: (x(4.0) * d1_half - d1_h) / x(3.0),
        d2: (x(4.0) * d2_half - d2_h) / x(3.0),
    }
}

fn jet_at<K: RadialProfile + ?Sized>(k: &K, r: f64) -> Result<RadialJet> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::Domain {
            quantity: "radial profile",
            r,
        });
    }
    let jet = k.jet(r).unwrap_or_else(|| finite_difference_jet(k, r));
    if jet.value.is_positive() && jet.value.is_finite() {
        Ok(jet)
    } else {
        Err(Error::Domain {
            quantity: "radial profile (k must be positive)",
            r,
        })
    }
}

/// `k'^2 - (k/r) k' - k k''`.
fn curvature_numerator(jet: &RadialJet, r: f64) -> Extended {
    let RadialJet { value, d1, d2 } = jet.clone();
    d1.clone() * d1.clone() - value.clone() / x(r) * d1 - value * d2
}

/// Scalar curvature `2 k^-4 (k'^2 - (k/r) k' - k k'')` of `k^2 (dx^2 + dy^2)`.
pub fn scalar_curvature_radial<K: RadialProfile + ?Sized>(k: &K, r: f64) -> Result<f64> {
    let jet = jet_at(k, r)?;
    let k2 = jet.value.clone() * jet.value.clone();
    Ok((x(2.0) * curvature_numerator(&jet, r) / (k2.clone() * k2)).to_f64())
}

/// Residual of `R(k) = C` with the `k^-4` denominator cleared:
/// `2 (k'^2 - (k/r) k' - k k'') - C k^4`.
pub fn constant_curvature_residual<K: RadialProfile + ?Sized>(k: &K, c: f64, r: f64) -> Result<f64> {
    let jet = jet_at(k, r)?;
    let k2 = jet.value.clone() * jet.value.clone();
    Ok((x(2.0) * curvature_numerator(&jet, r) - x(c) * k2.clone() * k2).to_f64())
}

/// `8 a^2 b / A^2`.
pub fn family_curvature(p: &ClassicalFactorParams) -> f64 {
    8.0 * p.exponent * p.exponent * p.shape / (p.scale * p.scale)
}

/// `pi A^2 / (b a)`.
pub fn family_volume(p: &ClassicalFactorParams) -> f64 {
    PI * p.scale * p.scale / (p.shape * p.exponent)
}

/// `8 pi a`.
pub fn family_gauss_bonnet(p: &ClassicalFactorParams) -> f64 {
    8.0 * PI * p.exponent
}

/// `-r k'(r) / k(r)`, the antiderivative of the Gauss-Bonnet density
/// divided by `4 pi`.
pub fn boundary_term<K: RadialProfile + ?Sized>(k: &K, r: f64) -> Result<f64> {
    let jet = jet_at(k, r)?;
    Ok((-x(r) * jet.d1 / jet.value).to_f64())
}

/// Boundary evaluations entering the telescoped Gauss-Bonnet integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryTerms {
    pub at_origin: f64,
    pub at_cutoff: f64,
    pub at_double_cutoff: f64,
}

impl BoundaryTerms {
    pub fn gauss_bonnet(&self) -> f64 {
        4.0 * PI * (self.at_cutoff - self.at_origin)
    }

    pub fn gauss_bonnet_doubled(&self) -> f64 {
        4.0 * PI * (self.at_double_cutoff - self.at_origin)
    }

    /// Whether doubling the cutoff moves the result by less than `tol`
    /// (relative, with an absolute floor of `tol` for near-zero values).
    pub fn is_converged(&self, tol: f64) -> bool {
        let value = self.gauss_bonnet();
        (self.gauss_bonnet_doubled() - value).abs() <= tol * value.abs().max(1.0)
    }
}

pub fn gauss_bonnet_boundary_terms<K: RadialProfile + ?Sized>(k: &K, r_max: f64) -> Result<BoundaryTerms> {
    if !(r_max > INNER_BOUNDARY_RADIUS && r_max.is_finite()) {
        return Err(invalid(
            "r_max",
            format!("must exceed {INNER_BOUNDARY_RADIUS}, got {r_max}"),
        ));
    }
    Ok(BoundaryTerms {
        at_origin: boundary_term(k, INNER_BOUNDARY_RADIUS)?,
        at_cutoff: boundary_term(k, r_max)?,
        at_double_cutoff: boundary_term(k, 2.0 * r_max)?,
    })
}

/// Gauss-Bonnet integral `4 pi [(-r k'/k)(r_max) - (-r k'/k)(0+)]`.
///
/// Fails with [`Error::NotConverged`] when doubling `r_max` changes the
/// result by more than [`BOUNDARY_CONVERGENCE_TOL`].
pub fn gauss_bonnet_quadrature<K: RadialProfile + ?Sized>(k: &K, r_max: f64) -> Result<f64> {
    let terms = gauss_bonnet_boundary_terms(k, r_max)?;
    if terms.is_converged(BOUNDARY_CONVERGENCE_TOL) {
        Ok(terms.gauss_bonnet())
    } else {
        Err(Error::NotConverged {
            value: terms.gauss_bonnet(),
            doubled: terms.gauss_bonnet_doubled(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn fam(a_scale: f64, a: f64, b: f64) -> ClassicalFactorParams {
        ClassicalFactorParams::new(a_scale, a, b).unwrap()
    }

    #[test]
    fn family_factor_examples() {
        assert_relative_eq!(family_factor(&fam(1.0, 1.0, 1.0), 1.0).unwrap(), 0.5);
        assert_relative_eq!(family_factor(&fam(1.0, 1.0, 1.0), 1e-12).unwrap(), 1.0, epsilon = 1e-12);
        assert_relative_eq!(family_factor(&fam(2.0, 2.0, 3.0), 1.0).unwrap(), 0.5);
        assert!(matches!(
            family_factor(&fam(1.0, 1.0, 1.0), 0.0),
            Err(Error::Domain { .. })
        ));
        assert!(family_factor(&fam(1.0, 1.0, 1.0), -1.0).is_err());
    }

    #[test]
    fn parameter_validation() {
        assert!(ClassicalFactorParams::new(0.0, 1.0, 1.0).is_err());
        assert!(ClassicalFactorParams::new(1.0, 0.5, 1.0).is_err());
        assert!(ClassicalFactorParams::new(1.0, 1.0, -2.0).is_err());
        assert!(ClassicalFactorParams::new(1.0, f64::NAN, 1.0).is_err());
    }

    #[test]
    fn closed_forms() {
        let p = fam(1.0, 1.0, 1.0);
        assert_relative_eq!(family_curvature(&p), 8.0);
        assert_relative_eq!(family_volume(&p), PI);
        assert_relative_eq!(family_gauss_bonnet(&p), 8.0 * PI);
        let p = fam(2.0, 1.0, 1.0);
        assert_relative_eq!(family_curvature(&p), 2.0);
        assert_relative_eq!(family_volume(&p), 4.0 * PI);
        assert_relative_eq!(family_gauss_bonnet(&p), 8.0 * PI);
        assert_relative_eq!(family_gauss_bonnet(&fam(1.0, 3.0, 2.0)), 24.0 * PI);
    }

    #[test]
    fn curvature_of_constant_profile_vanishes() {
        for r in [0.1, 1.0, 30.0] {
            assert_eq!(scalar_curvature_radial(&ConstantProfile(2.5), r).unwrap(), 0.0);
            let fd = scalar_curvature_radial(&FnProfile(|_r: f64| 2.5), r).unwrap();
            assert!(fd.abs() < 1e-12, "{fd}");
        }
    }

    #[test]
    fn curvature_examples() {
        let r = scalar_curvature_radial(&fam(1.0, 1.0, 1.0), 1.0).unwrap();
        assert_relative_eq!(r, 8.0, max_relative = 1e-14);
        let p = fam(1.0, 2.0, 1.0);
        let fd = scalar_curvature_radial(&FnProfile(|r: f64| p.value(r)), 0.7).unwrap();
        assert_relative_eq!(fd, 32.0, max_relative = 1e-6);
    }

    #[test]
    fn analytic_jet_matches_finite_differences() {
        let p = fam(1.7, 2.3, 0.6);
        for r in [0.05, 0.9, 4.0] {
            let a = p.jet(r).unwrap();
            let f = finite_difference_jet(&p, r);
            assert_relative_eq!(a.d1.to_f64(), f.d1.to_f64(), max_relative = 1e-15);
            assert_relative_eq!(a.d2.to_f64(), f.d2.to_f64(), max_relative = 1e-15);
        }
    }

    #[test]
    fn curvature_rejects_bad_input() {
        assert!(scalar_curvature_radial(&fam(1.0, 1.0, 1.0), 0.0).is_err());
        assert!(scalar_curvature_radial(&ConstantProfile(-1.0), 1.0).is_err());
        assert!(constant_curvature_residual(&ConstantProfile(0.0), 1.0, 1.0).is_err());
    }

    #[test]
    fn residual_examples() {
        let res = constant_curvature_residual(&fam(1.0, 1.0, 1.0), 8.0, 1.0).unwrap();
        assert!(res.abs() < 1e-6);
        assert_eq!(
            constant_curvature_residual(&ConstantProfile(1.0), 0.0, 3.0).unwrap(),
            0.0
        );
        assert_relative_eq!(
            constant_curvature_residual(&ConstantProfile(1.0), 1.0, 1.0).unwrap(),
            -1.0
        );
    }

    #[test]
    fn boundary_limits() {
        let p = fam(1.0, 2.0, 1.0);
        assert_relative_eq!(
            boundary_term(&p, INNER_BOUNDARY_RADIUS).unwrap(),
            p.origin_boundary_limit(),
            epsilon = 1e-12
        );
        assert_relative_eq!(
            boundary_term(&p, 1e4).unwrap(),
            p.infinity_boundary_limit(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn gauss_bonnet_quadrature_examples() {
        let gb = gauss_bonnet_quadrature(&fam(1.0, 1.0, 1.0), 1e4).unwrap();
        assert_relative_eq!(gb, 8.0 * PI, max_relative = 1e-3);
        let gb = gauss_bonnet_quadrature(&FnProfile(|r: f64| 1.0 / (1.0 + r * r)), 1e4).unwrap();
        assert_relative_eq!(gb, 8.0 * PI, max_relative = 1e-3);
        assert_eq!(gauss_bonnet_quadrature(&ConstantProfile(1.0), 1e4).unwrap(), 0.0);
        let gb = gauss_bonnet_quadrature(&fam(1.0, 2.0, 1.0), 1e4).unwrap();
        assert_relative_eq!(gb, 16.0 * PI, max_relative = 1e-3);
    }

    #[test]
    fn small_cutoff_is_flagged() {
        let err = gauss_bonnet_quadrature(&fam(1.0, 1.0, 1.0), 1.0).unwrap_err();
        assert!(matches!(err, Error::NotConverged { .. }));
        assert!(gauss_bonnet_quadrature(&fam(1.0, 1.0, 1.0), 0.0).is_err());
    }
}
