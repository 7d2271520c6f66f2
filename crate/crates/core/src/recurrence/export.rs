use std::io::Write;

use crate::error::{Error, Result};

use super::solver::RecurrenceSolution;

/// Formats a float with 17 significant digits.
pub fn full_precision(v: f64) -> String {
    format!("{v:.16e}")
}

/// Writes `n, phi_n, gb_partial_n, residual_n`. The last row has no
/// successor, so its partial sum and residual fields are empty.
pub fn write_solution_csv<W: Write>(sol: &RecurrenceSolution, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Singular(format!("csv output failed: {e}"));
    w.write_record(["n", "phi_n", "gb_partial_n", "residual_n"])
        .map_err(io)?;
    for (n, phi) in sol.phi.iter().enumerate() {
        let gb = sol.gb_partials.get(n).map(|v| full_precision(*v)).unwrap_or_default();
        let res = sol.residuals.get(n).map(|v| full_precision(*v)).unwrap_or_default();
        w.write_record([n.to_string(), full_precision(*phi), gb, res])
            .map_err(io)?;
    }
    w.flush()
        .map_err(|e| Error::Singular(format!("csv output failed: {e}")))?;
    Ok(())
}

/// Reads the `phi_n` column back from a solution CSV.
pub fn read_phi_column<R: std::io::Read>(input: R) -> Result<Vec<f64>> {
    let mut r = csv::Reader::from_reader(input);
    r.records()
        .map(|rec| {
            let rec = rec.map_err(|e| Error::Singular(format!("csv input failed: {e}")))?;
            rec.get(1)
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::Singular("malformed phi_n field".into()))
        })
        .collect()
}
