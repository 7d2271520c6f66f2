//! Moyal product on truncated two-variable Taylor jets.
//!
//! A jet is a polynomial in `(u, v)` of total degree at most [`DEGREE`]
//! with coefficients that are polynomials of degree 2 in `tau = i theta`.
//! The product is the full two-dimensional expansion
//! `f g + (tau/2) {f, g} + (tau^2/8) (f_uu g_vv - 2 f_uv g_uv + f_vv g_uu)`,
//! so nothing about radial reduction is assumed.

pub const DEGREE: usize = 7;
const N: usize = DEGREE + 1;

#[derive(Clone, Debug)]
pub struct Jet {
    /// `c[k][i][j]` multiplies `tau^k u^i v^j`.
    c: [[[f64; N]; N]; 3],
}

impl Jet {
    pub fn zero() -> Self {
        Jet { c: [[[0.0; N]; N]; 3] }
    }

    pub fn constant(v: f64) -> Self {
        let mut j = Self::zero();
        j.c[0][0][0] = v;
        j
    }

    /// Coefficient of `tau^k` at `u = v = 0`.
    pub fn at_origin(&self, k: usize) -> f64 {
        self.c[k][0][0]
    }

    fn map(&self, f: impl Fn(usize, usize, usize) -> f64) -> Self {
        let mut out = Self::zero();
        for k in 0..3 {
            for i in 0..N {
                for j in 0..N - i {
                    out.c[k][i][j] = f(k, i, j);
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        self.map(|k, i, j| self.c[k][i][j] + o.c[k][i][j])
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.map(|k, i, j| self.c[k][i][j] - o.c[k][i][j])
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|k, i, j| s * self.c[k][i][j])
    }

    /// Multiplication by `tau`.
    fn tau(&self) -> Self {
        self.map(|k, i, j| if k == 0 { 0.0 } else { self.c[k - 1][i][j] })
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for k in 0..3 {
            for i in 0..N {
                for j in 0..N - i {
                    let x = self.c[k][i][j];
                    if x == 0.0 {
                        continue;
                    }
                    for l in 0..3 - k {
                        for p in 0..N - i - j {
                            for q in 0..N - i - j - p {
                                out.c[k + l][i + p][j + q] += x * o.c[l][p][q];
                            }
                        }
                    }
                }
            }
        }
        out
    }

    pub fn du(&self) -> Self {
        self.map(|k, i, j| {
            if i + 1 + j < N {
                (i + 1) as f64 * self.c[k][i + 1][j]
            } else {
                0.0
            }
        })
    }

    pub fn dv(&self) -> Self {
        self.map(|k, i, j| {
            if i + j + 1 < N {
                (j + 1) as f64 * self.c[k][i][j + 1]
            } else {
                0.0
            }
        })
    }

    pub fn star(&self, g: &Self) -> Self {
        let f = self;
        let bracket = f.du().mul(&g.dv()).sub(&f.dv().mul(&g.du()));
        let second = f
            .du()
            .du()
            .mul(&g.dv().dv())
            .sub(&f.du().dv().mul(&g.du().dv()).scale(2.0))
            .add(&f.dv().dv().mul(&g.du().du()));
        f.mul(g)
            .add(&bracket.scale(0.5).tau())
            .add(&second.scale(0.125).tau().tau())
    }

    /// Pointwise reciprocal, by the geometric series in the nilpotent part.
    pub fn recip(&self) -> Self {
        let f0 = self.c[0][0][0];
        let e = self.sub(&Self::constant(f0)).scale(-1.0 / f0);
        let mut sum = Self::constant(1.0);
        let mut p = Self::constant(1.0);
        for _ in 0..DEGREE + 3 {
            p = p.mul(&e);
            sum = sum.add(&p);
        }
        sum.scale(1.0 / f0)
    }

    /// Star inverse: Newton iteration `g -> 2g - g * f * g` from `1/f`.
    pub fn star_inverse(&self) -> Self {
        let mut g = self.recip();
        for _ in 0..4 {
            g = g.scale(2.0).sub(&g.star(self).star(&g));
        }
        g
    }
}

/// `sum_m coeffs[m] s^(2m)` with `s^2 = (x0 + u)^2 + v^2`.
pub fn radial_polynomial(coeffs_in_s2: &[f64], x0: f64) -> Jet {
    let mut s2 = Jet::zero();
    s2.c[0][0][0] = x0 * x0;
    s2.c[0][1][0] = 2.0 * x0;
    s2.c[0][2][0] = 1.0;
    s2.c[0][0][2] = 1.0;
    let mut out = Jet::zero();
    let mut power = Jet::constant(1.0);
    for &c in coeffs_in_s2 {
        out = out.add(&power.scale(c));
        power = power.mul(&s2);
    }
    out
}

/// Order-by-order data at the point `(x0, 0)`: the `theta^0` and
/// `theta^2` parts of a real radial quantity. With `tau = i theta` the
/// `theta^2` coefficient is minus the `tau^2` one; the `tau^1` part must
/// vanish for radial inputs.
#[derive(Debug, Clone, Copy)]
pub struct Orders {
    pub order0: f64,
    pub order1: f64,
    pub order2: f64,
}

fn orders(j: &Jet) -> Orders {
    Orders {
        order0: j.at_origin(0),
        order1: j.at_origin(1),
        order2: -j.at_origin(2),
    }
}

/// `f * g` at `(x0, 0)`.
pub fn star_orders(f: &[f64], g: &[f64], x0: f64) -> Orders {
    orders(&radial_polynomial(f, x0).star(&radial_polynomial(g, x0)))
}

/// Star inverse of `f` at `(x0, 0)`.
pub fn inverse_orders(f: &[f64], x0: f64) -> Orders {
    orders(&radial_polynomial(f, x0).star_inverse())
}

/// `sum_i d_i f * f^-1 * d_i f` at `(x0, 0)`.
pub fn sandwich_orders(f: &[f64], x0: f64) -> Orders {
    let fj = radial_polynomial(f, x0);
    let g = fj.star_inverse();
    let (fu, fv) = (fj.du(), fj.dv());
    orders(&fu.star(&g.star(&fu)).add(&fv.star(&g.star(&fv))))
}

/// Coefficients in `r` of `sum_m c_m r^(2m)`.
pub fn as_r_polynomial(coeffs_in_s2: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; 2 * coeffs_in_s2.len()];
    for (m, c) in coeffs_in_s2.iter().enumerate() {
        out[2 * m] = *c;
    }
    out
}
