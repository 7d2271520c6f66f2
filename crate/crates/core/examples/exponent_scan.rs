//! Exponent a_hat = ln phi_5000 / ln 5000 over a grid of seeds, with the
//! N = 4000 / 6000 bars and the Gauss-Bonnet estimate at each point.

use std::f64::consts::PI;

use moyal_geom::cli::{log_grid, run_scan};
use moyal_geom::recurrence::{solve, RecurrenceProblem};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seeds = log_grid(0.1, 10.0, 25);
    let dir = std::env::temp_dir().join("moyal-scan-example");
    std::fs::create_dir_all(&dir)?;
    let rows = run_scan(&seeds, &dir.join("scan.csv"), false, |phi0| {
        solve(&RecurrenceProblem::frame(1.0, phi0, 6001)).map(|s| s.phi)
    })?;
    println!("   phi0      a_hat     [bar4000, bar6000]    GB/(8 pi)");
    for r in &rows {
        match (r.estimate, r.gauss_bonnet) {
            (Some(e), Some(gb)) => println!(
                "{:8.4} {:10.5}   [{:.5}, {:.5}]  {:.5}",
                r.phi0,
                e.a_hat,
                e.bar_low,
                e.bar_high,
                gb / (8.0 * PI)
            ),
            _ => println!("{:8.4}  failed: {}", r.phi0, r.status),
        }
    }
    println!("table written to {}", dir.join("scan.csv").display());
    Ok(())
}
