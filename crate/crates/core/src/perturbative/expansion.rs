use crate::error::{invalid, Error, Result};

use super::radial::{Jet3, SmoothRadialFunction};

fn check_radius(r: f64) -> Result<()> {
    if r.is_finite() && r > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            quantity: "order theta^2 expansion",
            r,
        })
    }
}

fn check_theta(theta: f64) -> Result<()> {
    if theta.is_finite() {
        Ok(())
    } else {
        Err(invalid("theta", "must be finite"))
    }
}

fn nonzero(f: &Jet3, r: f64) -> Result<()> {
    if f.value != 0.0 && f.value.is_finite() {
        Ok(())
    } else {
        Err(Error::Singular(format!("f({r}) = {} has no inverse", f.value)))
    }
}

/// `f g - theta^2/(8r) (f'' g' + f' g'')` on jets.
pub fn star_theta2_jets(f: &Jet3, g: &Jet3, theta: f64, r: f64) -> f64 {
    f.value * g.value - theta * theta / (8.0 * r) * (f.d2 * g.d1 + f.d1 * g.d2)
}

/// Moyal product of two radial functions to order `theta^2`.
pub fn star_theta2<F, G>(f: &F, g: &G, theta: f64, r: f64) -> Result<f64>
where
    F: SmoothRadialFunction + ?Sized,
    G: SmoothRadialFunction + ?Sized,
{
    check_radius(r)?;
    check_theta(theta)?;
    Ok(star_theta2_jets(&f.jet(r), &g.jet(r), theta, r))
}

/// `theta^2` coefficient of the Moyal inverse, `((f')^3 f^-4 - f'' f' f^-3)/(4r)`.
fn inverse_correction(f: &Jet3, r: f64) -> f64 {
    let inv = f.value.recip();
    (f.d1.powi(3) * inv.powi(4) - f.d2 * f.d1 * inv.powi(3)) / (4.0 * r)
}

/// Moyal inverse of a radial function to order `theta^2`.
pub fn inverse_theta2<F: SmoothRadialFunction + ?Sized>(f: &F, theta: f64, r: f64) -> Result<f64> {
    check_radius(r)?;
    check_theta(theta)?;
    let j = f.jet(r);
    nonzero(&j, r)?;
    Ok(j.value.recip() + theta * theta * inverse_correction(&j, r))
}

/// [`inverse_theta2`] as a radial function of its own.
///
/// The leading part `1/f` is differentiated exactly from the jet of `f`;
/// only the `theta^2` correction is differenced, so differencing error
/// enters at order `theta^4`.
pub struct MoyalInverse<'a, F: ?Sized> {
    pub f: &'a F,
    pub theta: f64,
}

impl<F: SmoothRadialFunction + ?Sized> SmoothRadialFunction for MoyalInverse<'_, F> {
    fn value(&self, r: f64) -> f64 {
        let j = self.f.jet(r);
        j.value.recip() + self.theta * self.theta * inverse_correction(&j, r)
    }

    fn jet(&self, r: f64) -> Jet3 {
        let j = self.f.jet(r);
        let inv = j.value.recip();
        let lead = Jet3 {
            value: inv,
            d1: -j.d1 * inv * inv,
            d2: (2.0 * j.d1 * j.d1 * inv - j.d2) * inv * inv,
            d3: (-6.0 * j.d1.powi(3) * inv * inv + 6.0 * j.d1 * j.d2 * inv - j.d3) * inv * inv,
        };
        let corr = super::radial::finite_difference_jet3(|x| inverse_correction(&self.f.jet(x), x), r);
        let t2 = self.theta * self.theta;
        Jet3 {
            value: lead.value + t2 * corr.value,
            d1: lead.d1 + t2 * corr.d1,
            d2: lead.d2 + t2 * corr.d2,
            d3: lead.d3 + t2 * corr.d3,
        }
    }
}

/// `f * f^-1 - 1` with both factors truncated at order `theta^2`.
pub fn composition_residual<F: SmoothRadialFunction + ?Sized>(f: &F, theta: f64, r: f64) -> Result<f64> {
    check_radius(r)?;
    let j = f.jet(r);
    nonzero(&j, r)?;
    let inv = MoyalInverse { f, theta };
    Ok(star_theta2_jets(&j, &inv.jet(r), theta, r) - 1.0)
}

/// Order `theta^2` coefficient of `sum_i delta_i(f) * f^-1 * delta_i(f)`.
pub fn gradient_sandwich_correction(j: &Jet3, r: f64) -> f64 {
    let (f0, f1, f2, f3) = (j.value, j.d1, j.d2, j.d3);
    let i1 = f0.recip();
    let (i2, i3, i4) = (i1 * i1, i1 * i1 * i1, i1 * i1 * i1 * i1);
    let (r1, r2, r3, r4) = (r.recip(), r.powi(-2), r.powi(-3), r.powi(-4));
    0.25 * r4 * f1 * f1 * i1 + 0.5 * r3 * f1.powi(3) * i2 - 0.5 * r3 * f1 * f2 * i1 + r2 * f1.powi(4) * i3
        - 1.5 * r2 * f1 * f1 * f2 * i2
        + 0.25 * r1 * f1.powi(5) * i4
        + 0.25 * r2 * f1 * f3 * i1
        + 0.25 * r2 * f2 * f2 * i1
        - 0.75 * r1 * f1.powi(3) * f2 * i3
        + 0.25 * r1 * f1 * f1 * f3 * i2
        + 0.5 * r1 * f1 * f2 * f2 * i2
        - 0.25 * r1 * f2 * f3 * i1
}

/// `sum_i delta_i(f) * f^-1 * delta_i(f)` to order `theta^2`:
/// `(f')^2/f + theta^2 (twelve-term correction)`.
pub fn gradient_sandwich_theta2<F: SmoothRadialFunction + ?Sized>(f: &F, theta: f64, r: f64) -> Result<f64> {
    check_radius(r)?;
    check_theta(theta)?;
    let j = f.jet(r);
    nonzero(&j, r)?;
    Ok(j.d1 * j.d1 / j.value + theta * theta * gradient_sandwich_correction(&j, r))
}
