use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::real::Precision;

/// Which constant-curvature equation the sequence solves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Orthonormal-frame equation, source term `R/phi_n`.
    #[default]
    Frame,
    /// Rosenberg's convention, source term `-c/phi_n^2`.
    Rosenberg,
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Variant::Frame => "frame",
            Variant::Rosenberg => "rosenberg",
        })
    }
}

/// Input of [`solve`](super::solve): the sequence `phi_0 .. phi_{len-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RecurrenceProblem {
    pub variant: Variant,
    /// Dimensionless curvature `R = C theta` (frame variant).
    #[serde(rename = "R")]
    pub curvature: f64,
    /// Rosenberg constant (rosenberg variant).
    pub c: f64,
    pub phi0: f64,
    /// Number of terms, `phi_0` included.
    #[serde(rename = "N")]
    pub len: usize,
    pub precision: Precision,
}

impl RecurrenceProblem {
    pub fn frame(curvature: f64, phi0: f64, len: usize) -> Self {
        Self {
            variant: Variant::Frame,
            curvature,
            c: 0.0,
            phi0,
            len,
            precision: Precision::Standard,
        }
    }

    pub fn rosenberg(c: f64, phi0: f64, len: usize) -> Self {
        Self {
            variant: Variant::Rosenberg,
            curvature: 0.0,
            c,
            phi0,
            len,
            precision: Precision::Standard,
        }
    }

    pub fn with_precision(mut self, precision: Precision) -> Self {
        self.precision = precision;
        self
    }

    pub fn with_len(mut self, len: usize) -> Self {
        self.len = len;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.phi0.is_finite() && self.phi0 > 0.0) {
            return Err(invalid("phi0", format!("must be positive, got {}", self.phi0)));
        }
        if self.len == 0 {
            return Err(invalid("N", "must be at least 1"));
        }
        if !self.curvature.is_finite() {
            return Err(invalid("R", "must be finite"));
        }
        if !self.c.is_finite() {
            return Err(invalid("c", "must be finite"));
        }
        Ok(())
    }

    /// Same problem with `phi0 -> lambda phi0` and the source rescaled so the
    /// solution scales by `lambda` (`R -> lambda^2 R`, `c -> lambda^3 c`).
    pub fn scaled(&self, lambda: f64) -> Self {
        Self {
            phi0: lambda * self.phi0,
            curvature: lambda * lambda * self.curvature,
            c: lambda * lambda * lambda * self.c,
            ..*self
        }
    }
}
