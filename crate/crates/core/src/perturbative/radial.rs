/// Value and first three radial derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet3 {
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
}

/// A smooth radial function with derivatives to third order.
pub trait SmoothRadialFunction {
    fn value(&self, r: f64) -> f64;

    /// Derivatives; Richardson-extrapolated central differences unless
    /// overridden.
    fn jet(&self, r: f64) -> Jet3 {
        finite_difference_jet3(|x| self.value(x), r)
    }
}

fn fd_step(r: f64) -> f64 {
    (1e-3 * (1.0 + r)).min(0.25 * r.abs().max(1e-12))
}

/// Central differences for the first three derivatives with one
/// Richardson extrapolation each.
pub fn finite_difference_jet3(f: impl Fn(f64) -> f64, r: f64) -> Jet3 {
    let f0 = f(r);
    let central = |h: f64| {
        let (p1, m1) = (f(r + h), f(r - h));
        let (p2, m2) = (f(r + 2.0 * h), f(r - 2.0 * h));
        (
            (p1 - m1) / (2.0 * h),
            (p1 - 2.0 * f0 + m1) / (h * h),
            (p2 - 2.0 * p1 + 2.0 * m1 - m2) / (2.0 * h * h * h),
        )
    };
    let h = fd_step(r);
    let (a1, a2, a3) = central(h);
    let (b1, b2, b3) = central(h / 2.0);
    Jet3 {
        value: f0,
        d1: (4.0 * b1 - a1) / 3.0,
        d2: (4.0 * b2 - a2) / 3.0,
        d3: (4.0 * b3 - a3) / 3.0,
    }
}

/// Polynomial `sum_k c_k r^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialPolynomial(pub Vec<f64>);

impl RadialPolynomial {
    fn derivative(&self) -> Self {
        RadialPolynomial(self.0.iter().enumerate().skip(1).map(|(k, c)| k as f64 * c).collect())
    }
}

impl SmoothRadialFunction for RadialPolynomial {
    fn value(&self, r: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, c| acc * r + c)
    }

    fn jet(&self, r: f64) -> Jet3 {
        let p1 = self.derivative();
        let p2 = p1.derivative();
        let p3 = p2.derivative();
        Jet3 {
            value: self.value(r),
            d1: p1.value(r),
            d2: p2.value(r),
            d3: p3.value(r),
        }
    }
}

/// Classical Fubini-Study factor `eta (1 + r^2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FubiniStudy {
    pub eta: f64,
}

impl SmoothRadialFunction for FubiniStudy {
    fn value(&self, r: f64) -> f64 {
        self.eta * (1.0 + r * r)
    }

    fn jet(&self, r: f64) -> Jet3 {
        Jet3 {
            value: self.value(r),
            d1: 2.0 * self.eta * r,
            d2: 2.0 * self.eta,
            d3: 0.0,
        }
    }
}

/// Radial function given by a closure; derivatives by finite differences.
#[derive(Clone, Copy)]
pub struct FnRadial<F>(pub F);

impl<F: Fn(f64) -> f64> SmoothRadialFunction for FnRadial<F> {
    fn value(&self, r: f64) -> f64 {
        (self.0)(r)
    }
}

impl<T: SmoothRadialFunction + ?Sized> SmoothRadialFunction for &T {
    fn value(&self, r: f64) -> f64 {
        (**self).value(r)
    }

    fn jet(&self, r: f64) -> Jet3 {
        (**self).jet(r)
    }
}
