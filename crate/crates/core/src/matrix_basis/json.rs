//! JSON wire format for operators: `theta`, `dim` and a row-major list of
//! coefficients with explicit real and imaginary parts.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::operator::{check_theta, measured_bandwidth, MatrixOperator, RadialOperator};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixOperatorJson {
    pub theta: f64,
    pub dim: usize,
    pub coefficients: Vec<ComplexJson>,
    /// Leading indices free of truncation error; the whole block if absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub clean: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialOperatorJson {
    pub theta: f64,
    pub dim: usize,
    pub phi: Vec<f64>,
}

impl From<MatrixOperator> for MatrixOperatorJson {
    fn from(op: MatrixOperator) -> Self {
        let dim = op.dim();
        let coefficients = (0..dim)
            .flat_map(|m| (0..dim).map(move |n| (m, n)))
            .map(|(m, n)| {
                let z = op.coeff[(m, n)];
                ComplexJson { re: z.re, im: z.im }
            })
            .collect();
        let clean = (op.clean < dim).then_some(op.clean);
        Self {
            theta: op.theta,
            dim,
            coefficients,
            clean,
        }
    }
}

impl TryFrom<MatrixOperatorJson> for MatrixOperator {
    type Error = Error;

    fn try_from(j: MatrixOperatorJson) -> Result<Self> {
        check_theta(j.theta)?;
        if j.dim == 0 || j.coefficients.len() != j.dim * j.dim {
            return Err(Error::Mismatch(format!(
                "dim {} needs {} coefficients, got {}",
                j.dim,
                j.dim * j.dim,
                j.coefficients.len()
            )));
        }
        let coeff = DMatrix::from_row_iterator(j.dim, j.dim, j.coefficients.iter().map(|c| Complex64::new(c.re, c.im)));
        let bandwidth = measured_bandwidth(&coeff);
        Ok(Self {
            theta: j.theta,
            coeff,
            clean: j.clean.unwrap_or(j.dim).min(j.dim),
            bandwidth,
        })
    }
}

impl From<RadialOperator> for RadialOperatorJson {
    fn from(op: RadialOperator) -> Self {
        Self {
            theta: op.theta,
            dim: op.phi.len(),
            phi: op.phi,
        }
    }
}

impl TryFrom<RadialOperatorJson> for RadialOperator {
    type Error = Error;

    fn try_from(j: RadialOperatorJson) -> Result<Self> {
        if j.phi.len() != j.dim {
            return Err(Error::Mismatch(format!(
                "dim {} but {} coefficients",
                j.dim,
                j.phi.len()
            )));
        }
        RadialOperator::new(j.theta, j.phi)
    }
}
