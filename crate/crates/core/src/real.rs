//! Scalar types used by the recurrence solver and the curvature formulas.
//!
//! `f64` is the standard working precision; [`Extended`] wraps a 128-bit
//! mantissa MPFR float used to cross-check long runs and to evaluate
//! expressions that cancel badly in binary64.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::ops::Pow;
use rug::Float;
use serde::{Deserialize, Serialize};

/// Mantissa bits of [`Extended`].
pub const EXTENDED_BITS: u32 = 128;

/// Minimal real-number interface needed by the recurrence and series code.
pub trait Real:
    Clone
    + Debug
    + PartialOrd
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Approximate unit roundoff.
    const UNIT_ROUNDOFF: f64;

    fn from_f64(x: f64) -> Self;
    fn to_f64(&self) -> f64;
    fn sqrt(&self) -> Self;
    fn abs(&self) -> Self;
    fn is_finite(&self) -> bool;

    fn from_usize(n: usize) -> Self {
        Self::from_f64(n as f64)
    }
}

impl Real for f64 {
    const UNIT_ROUNDOFF: f64 = f64::EPSILON / 2.0;

    fn from_f64(x: f64) -> Self {
        x
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
}

/// MPFR float with a [`EXTENDED_BITS`]-bit mantissa, rounded to nearest.
#[derive(Clone, Debug, PartialEq, PartialOrd)]
pub struct Extended(Float);

impl Extended {
    pub fn ln(&self) -> Self {
        Extended(self.0.clone().ln())
    }

    pub fn exp(&self) -> Self {
        Extended(self.0.clone().exp())
    }

    /// `self^y` for positive `self`.
    pub fn powf(&self, y: &Self) -> Self {
        Extended(self.0.clone().pow(&y.0))
    }

    pub fn recip(&self) -> Self {
        Extended(self.0.clone().recip())
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_sign_positive() && !self.0.is_zero() && !self.0.is_nan()
    }
}

impl Add for Extended {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Extended(self.0 + rhs.0)
    }
}

impl Sub for Extended {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Extended(self.0 - rhs.0)
    }
}

impl Mul for Extended {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Extended(self.0 * rhs.0)
    }
}

impl Div for Extended {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        Extended(self.0 / rhs.0)
    }
}

impl Neg for Extended {
    type Output = Self;
    fn neg(self) -> Self {
        Extended(-self.0)
    }
}

impl Real for Extended {
    const UNIT_ROUNDOFF: f64 = 2.938_735_877_055_719e-39; // 2^-128

    fn from_f64(x: f64) -> Self {
        Extended(Float::with_val(EXTENDED_BITS, x))
    }

    fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    fn sqrt(&self) -> Self {
        Extended(self.0.clone().sqrt())
    }

    fn abs(&self) -> Self {
        Extended(self.0.clone().abs())
    }

    fn is_finite(&self) -> bool {
        self.0.is_finite()
    }
}

/// Working-precision selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Precision {
    /// IEEE binary64.
    #[default]
    Standard,
    /// 128-bit mantissa MPFR floats.
    Extended,
}

impl Precision {
    pub fn unit_roundoff(self) -> f64 {
        match self {
            Precision::Standard => <f64 as Real>::UNIT_ROUNDOFF,
            Precision::Extended => <Extended as Real>::UNIT_ROUNDOFF,
        }
    }

    /// The other precision, used for cross-checks.
    pub fn other(self) -> Self {
        match self {
            Precision::Standard => Precision::Extended,
            Precision::Extended => Precision::Standard,
        }
    }
}

impl std::fmt::Display for Precision {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Precision::Standard => "standard",
            Precision::Extended => "extended",
        })
    }
}
