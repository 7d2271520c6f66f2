use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

use super::radial::{finite_difference_jet3, Jet3, SmoothRadialFunction};

/// Value of `C2` that removes the `log r` singularity at the origin.
pub fn regular_c2(eta: f64) -> f64 {
    2.0 * eta / 3.0
}

/// `w(r) = (1 - r^2) ln(1 + r^2) + (r^2 - 2)/(1 + r^2)` and two derivatives:
/// the part of the particular solution without `log r`.
fn w_regular(r: f64) -> [f64; 3] {
    let r2 = r * r;
    let s = 1.0 + r2;
    let l = r2.ln_1p();
    let value = (1.0 - r2) * l + (r2 - 2.0) / s;
    let d1 = -2.0 * r * l + 2.0 * r * (1.0 - r2) / s + 6.0 * r / (s * s);
    let d2 = -2.0 * l - 4.0 * r2 / s + ((2.0 - 6.0 * r2) * s - 4.0 * r2 * (1.0 - r2)) / (s * s) + 6.0 / (s * s)
        - 24.0 * r2 / (s * s * s);
    [value, d1, d2]
}

/// `(r^2 - 1) ln r` and two derivatives.
fn log_mode(r: f64) -> [f64; 3] {
    let l = r.ln();
    [
        (r * r - 1.0) * l,
        2.0 * r * l + (r * r - 1.0) / r,
        2.0 * l + 3.0 + 1.0 / (r * r),
    ]
}

/// General solution of the order `theta^2` correction equation,
///
/// `C1 (r^2-1) + C2 ((r^2-1) ln r - 2)
///  - (eta/3) ((1-r^4) ln(1+r^2) + 2 (r^4-1) ln r + r^2 - 2)/(1+r^2)`,
///
/// with the two `ln r` terms merged into `(C2 - 2 eta/3)(r^2-1) ln r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EpsilonGeneral {
    pub c1: f64,
    pub c2: f64,
    pub eta: f64,
}

impl EpsilonGeneral {
    fn log_weight(&self) -> f64 {
        self.c2 - regular_c2(self.eta)
    }

    /// Value and first two derivatives.
    pub fn derivatives(&self, r: f64) -> Result<[f64; 3]> {
        if !(r.is_finite() && r >= 0.0) {
            return Err(Error::Domain { quantity: "epsilon", r });
        }
        let k = self.log_weight();
        let [w0, w1, w2] = w_regular(r);
        let [l0, l1, l2] = if k == 0.0 {
            [0.0; 3]
        } else if r == 0.0 {
            return Err(Error::Singular(format!(
                "log r term with weight {k} diverges at the origin"
            )));
        } else {
            log_mode(r)
        };
        let c = self.eta / 3.0;
        // at the origin w = -2, so the value collapses to -C1 - 2 eta/3
        let value = if r == 0.0 {
            -self.c1 - regular_c2(self.eta)
        } else {
            self.c1 * (r * r - 1.0) + k * l0 - 2.0 * self.c2 - c * w0
        };
        Ok([
            value,
            2.0 * self.c1 * r + k * l1 - c * w1,
            2.0 * self.c1 + k * l2 - c * w2,
        ])
    }
}

impl SmoothRadialFunction for EpsilonGeneral {
    fn value(&self, r: f64) -> f64 {
        self.derivatives(r).map(|d| d[0]).unwrap_or(f64::NAN)
    }

    fn jet(&self, r: f64) -> Jet3 {
        match self.derivatives(r) {
            Ok([value, d1, d2]) => Jet3 {
                value,
                d1,
                d2,
                d3: finite_difference_jet3(|x| self.derivatives(x).map(|d| d[2]).unwrap_or(f64::NAN), r).d1,
            },
            Err(_) => Jet3 {
                value: f64::NAN,
                d1: f64::NAN,
                d2: f64::NAN,
                d3: f64::NAN,
            },
        }
    }
}

/// The regular solution, `C2 = 2 eta / 3`.
pub fn epsilon_regular_fn(c1: f64, eta: f64) -> EpsilonGeneral {
    EpsilonGeneral {
        c1,
        c2: regular_c2(eta),
        eta,
    }
}

pub fn epsilon_general(r: f64, c1: f64, c2: f64, eta: f64) -> Result<f64> {
    if r == 0.0 && c2 != regular_c2(eta) {
        return Err(Error::Singular(
            "general solution diverges at r = 0 unless C2 = 2 eta/3".into(),
        ));
    }
    if !(r >= 0.0 && r.is_finite()) {
        return Err(Error::Domain { quantity: "epsilon", r });
    }
    EpsilonGeneral { c1, c2, eta }.derivatives(r).map(|d| d[0])
}

/// Regular solution; at `r = 0` it equals `-C1 - 2 eta / 3`.
pub fn epsilon_regular(r: f64, c1: f64, eta: f64) -> Result<f64> {
    epsilon_regular_fn(c1, eta).derivatives(r).map(|d| d[0])
}

/// `eps'' + (1/r - 4r/(1+r^2)) eps' + 4 eps/(1+r^2) + 8 eta (1-r^2)/(1+r^2)^3`.
pub fn epsilon_ode_residual<E: SmoothRadialFunction + ?Sized>(eps: &E, eta: f64, r: f64) -> Result<f64> {
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::Domain {
            quantity: "correction equation",
            r,
        });
    }
    let j = eps.jet(r);
    let s = 1.0 + r * r;
    Ok(j.d2 + (1.0 / r - 4.0 * r / s) * j.d1 + 4.0 * j.value / s + 8.0 * eta * (1.0 - r * r) / (s * s * s))
}

/// `(eta, C1, theta)` of the deformed Fubini-Study factor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PerturbativeParams {
    pub eta: f64,
    #[serde(rename = "C1")]
    pub c1: f64,
    pub theta: f64,
}

impl PerturbativeParams {
    pub fn new(eta: f64, c1: f64, theta: f64) -> Result<Self> {
        if !(eta.is_finite() && eta > 0.0) {
            return Err(invalid("eta", format!("must be positive, got {eta}")));
        }
        if !c1.is_finite() {
            return Err(invalid("C1", "must be finite"));
        }
        if !(theta.is_finite() && theta >= 0.0) {
            return Err(invalid("theta", format!("must be non-negative, got {theta}")));
        }
        Ok(Self { eta, c1, theta })
    }

    /// `eta = 1/2`, `C1 = -2 eta / 3`, so that the correction vanishes at
    /// the origin.
    pub fn unit_curvature(theta: f64) -> Result<Self> {
        Self::new(0.5, -1.0 / 3.0, theta)
    }

    pub fn c2(&self) -> f64 {
        regular_c2(self.eta)
    }

    pub fn with_theta(self, theta: f64) -> Result<Self> {
        Self::new(self.eta, self.c1, theta)
    }
}

/// `1 / (eta (1 + r^2) + theta^2 eps(r))` with the regular `eps`.
pub fn deformed_conformal_factor(r: f64, p: &PerturbativeParams) -> Result<f64> {
    let eps = epsilon_regular(r, p.c1, p.eta)?;
    let den = p.eta * (1.0 + r * r) + p.theta * p.theta * eps;
    if den > 0.0 && den.is_finite() {
        Ok(den.recip())
    } else {
        Err(Error::NonPositiveFactor { r, value: den })
    }
}
