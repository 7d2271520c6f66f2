//! Resumable, concurrent exponent scans.

use std::fs::{self, OpenOptions};
use std::io::BufWriter;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result as LibResult;
use crate::recurrence::{exponent_estimate, full_precision, gauss_bonnet_estimate, ExponentEstimate, CENTRAL_INDEX};

use super::CliError;

const HEADER: [&str; 7] = ["index", "phi0", "a_hat", "bar_low", "bar_high", "gb_estimate", "status"];

/// One grid point of a scan. Failed points keep their error message in
/// `status` and have no estimates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub index: usize,
    pub phi0: f64,
    pub estimate: Option<ExponentEstimate>,
    /// `gauss_bonnet_estimate` at `N = 5000`.
    pub gauss_bonnet: Option<f64>,
    pub status: String,
}

impl ScanRow {
    pub fn is_ok(&self) -> bool {
        self.estimate.is_some()
    }

    fn evaluate(index: usize, phi0: f64, phi: LibResult<Vec<f64>>) -> Self {
        let point = phi.and_then(|phi| Ok((exponent_estimate(&phi)?, gauss_bonnet_estimate(&phi, CENTRAL_INDEX)?)));
        match point {
            Ok((e, gb)) if e.a_hat.is_finite() && gb.is_finite() => Self {
                index,
                phi0,
                estimate: Some(e),
                gauss_bonnet: Some(gb),
                status: "ok".into(),
            },
            Ok(_) => Self::failed(index, phi0, "non-finite estimate".into()),
            Err(e) => Self::failed(index, phi0, e.to_string()),
        }
    }

    fn failed(index: usize, phi0: f64, status: String) -> Self {
        Self {
            index,
            phi0,
            estimate: None,
            gauss_bonnet: None,
            status,
        }
    }

    fn record(&self) -> Vec<String> {
        let opt = |v: Option<f64>| v.map(full_precision).unwrap_or_default();
        vec![
            self.index.to_string(),
            full_precision(self.phi0),
            opt(self.estimate.map(|e| e.a_hat)),
            opt(self.estimate.map(|e| e.bar_low)),
            opt(self.estimate.map(|e| e.bar_high)),
            opt(self.gauss_bonnet),
            self.status.clone(),
        ]
    }

    fn parse(rec: &csv::StringRecord) -> Option<Self> {
        let num = |i: usize| -> Option<Option<f64>> {
            let s = rec.get(i)?;
            if s.is_empty() {
                Some(None)
            } else {
                s.parse().ok().map(Some)
            }
        };
        let estimate = match (num(2)?, num(3)?, num(4)?) {
            (Some(a_hat), Some(bar_low), Some(bar_high)) => Some(ExponentEstimate {
                a_hat,
                bar_low,
                bar_high,
            }),
            _ => None,
        };
        Some(Self {
            index: rec.get(0)?.parse().ok()?,
            phi0: num(1)??,
            estimate,
            gauss_bonnet: num(5)?,
            status: rec.get(6)?.to_string(),
        })
    }
}

/// Rows of an existing scan file that belong to `seeds` (same index and
/// the same printed seed).
pub fn read_completed(path: &Path, seeds: &[f64]) -> Vec<ScanRow> {
    let Ok(mut r) = csv::Reader::from_path(path) else {
        return Vec::new();
    };
    let mut rows: Vec<ScanRow> = r
        .records()
        .filter_map(|rec| rec.ok().as_ref().and_then(ScanRow::parse))
        .filter(|row| {
            seeds
                .get(row.index)
                .is_some_and(|s| full_precision(*s) == full_precision(row.phi0))
        })
        .collect();
    rows.sort_by_key(|r| r.index);
    rows.dedup_by_key(|r| r.index);
    rows
}

fn write_all(path: &Path, rows: &[ScanRow]) -> Result<(), CliError> {
    let tmp = path.with_extension("csv.tmp");
    {
        let mut w = csv::Writer::from_writer(BufWriter::new(fs::File::create(&tmp)?));
        w.write_record(HEADER)?;
        for row in rows {
            w.write_record(row.record())?;
        }
        w.flush()?;
    }
    fs::rename(tmp, path)?;
    Ok(())
}

fn append(path: &Path, rows: &[ScanRow]) -> Result<(), CliError> {
    let file = OpenOptions::new().append(true).open(path)?;
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(file);
    for row in rows {
        w.write_record(row.record())?;
    }
    w.flush()?;
    Ok(())
}

/// Runs `sequence` on every seed and records the exponent estimates in the
/// CSV at `path`.
///
/// Points are computed a batch at a time on the rayon pool and appended as
/// each batch finishes, so an interrupted scan can be resumed with
/// `resume = true`: rows already present for the same grid are kept. The
/// final file lists every point in seed order. A failing point is recorded
/// with its error and does not stop the scan.
pub fn run_scan<F>(seeds: &[f64], path: &Path, resume: bool, sequence: F) -> Result<Vec<ScanRow>, CliError>
where
    F: Fn(f64) -> LibResult<Vec<f64>> + Sync,
{
    let mut rows = if resume {
        read_completed(path, seeds)
    } else {
        Vec::new()
    };
    write_all(path, &rows)?;
    let done: Vec<bool> = {
        let mut d = vec![false; seeds.len()];
        rows.iter().for_each(|r| d[r.index] = true);
        d
    };
    let pending: Vec<usize> = (0..seeds.len()).filter(|&i| !done[i]).collect();
    let batch = rayon::current_num_threads().max(1);
    for chunk in pending.chunks(batch) {
        let fresh: Vec<ScanRow> = chunk
            .par_iter()
            .map(|&i| ScanRow::evaluate(i, seeds[i], sequence(seeds[i])))
            .collect();
        append(path, &fresh)?;
        rows.extend(fresh);
    }
    rows.sort_by_key(|r| r.index);
    write_all(path, &rows)?;
    Ok(rows)
}

/// Log-spaced grid of `count` points on `[lo, hi]`.
pub fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    if count <= 1 {
        return vec![lo; count];
    }
    let (a, b) = (lo.ln(), hi.ln());
    (0..count)
        .map(|i| (a + (b - a) * i as f64 / (count - 1) as f64).exp())
        .collect()
}
