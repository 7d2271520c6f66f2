use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::recurrence::full_precision;

use super::epsilon::{deformed_conformal_factor, PerturbativeParams};

/// Deformed factor on a radial grid, one column per `theta`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorTable {
    pub eta: f64,
    #[serde(rename = "C1")]
    pub c1: f64,
    pub thetas: Vec<f64>,
    pub radii: Vec<f64>,
    /// `columns[j][i]` is the factor at `radii[i]` for `thetas[j]`.
    pub columns: Vec<Vec<f64>>,
}

impl FactorTable {
    pub fn compute(eta: f64, c1: f64, thetas: &[f64], radii: &[f64]) -> Result<Self> {
        let columns = thetas
            .iter()
            .map(|&t| {
                let p = PerturbativeParams::new(eta, c1, t)?;
                radii.iter().map(|&r| deformed_conformal_factor(r, &p)).collect()
            })
            .collect::<Result<Vec<Vec<f64>>>>()?;
        Ok(Self {
            eta,
            c1,
            thetas: thetas.to_vec(),
            radii: radii.to_vec(),
            columns,
        })
    }

    /// `n` equally spaced radii on `[0, r_max]`.
    pub fn uniform_radii(r_max: f64, n: usize) -> Vec<f64> {
        (0..n).map(|i| r_max * i as f64 / (n.max(2) - 1) as f64).collect()
    }

    pub fn is_decreasing(column: &[f64]) -> bool {
        column.windows(2).all(|w| w[1] < w[0])
    }

    /// Header `r, factor_theta0, factor_theta1, ...`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let io = |e: csv::Error| Error::Singular(format!("csv output failed: {e}"));
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["r".to_string()];
        header.extend((0..self.thetas.len()).map(|j| format!("factor_theta{j}")));
        w.write_record(&header).map_err(io)?;
        for (i, r) in self.radii.iter().enumerate() {
            let mut row = vec![full_precision(*r)];
            row.extend(self.columns.iter().map(|c| full_precision(c[i])));
            w.write_record(&row).map_err(io)?;
        }
        w.flush()
            .map_err(|e| Error::Singular(format!("csv output failed: {e}")))?;
        Ok(())
    }
}
