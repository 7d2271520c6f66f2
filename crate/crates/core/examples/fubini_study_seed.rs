//! Shooting for the seed whose exponent is 1 and comparison of that
//! solution with the large-n series of the linearly growing solution.

use moyal_geom::recurrence::{find_fs_seed, fs_series, fs_series_residual, solve, RecurrenceProblem};

fn main() -> moyal_geom::Result<()> {
    for curvature in [0.5, 1.0, 2.0] {
        let found = find_fs_seed(curvature, 1e-3)?;
        let sol = solve(&RecurrenceProblem::frame(curvature, found.seed, 6001))?;
        println!(
            "R={curvature}: seed {:.10} (phi0/sqrt R = {:.6}), a_hat {:.8}, {} bisections",
            found.seed,
            found.seed / curvature.sqrt(),
            found.exponent.a_hat,
            found.bisections
        );
        for n in [10, 100, 1000, 5000] {
            println!(
                "   n={n:5}  phi_n={:12.4}  series={:12.4}  series residual={:.2e}",
                sol.phi[n],
                fs_series(n, curvature)?,
                fs_series_residual(n, curvature)?
            );
        }
    }
    Ok(())
}
