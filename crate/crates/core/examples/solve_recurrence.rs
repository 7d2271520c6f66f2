//! Frame recurrence from a seed: sequence, residuals, exponent and
//! Gauss-Bonnet estimate, with a cross-check in extended precision.

use std::f64::consts::PI;

use moyal_geom::recurrence::{precision_check, solve, RecurrenceProblem, CENTRAL_INDEX};

fn main() -> moyal_geom::Result<()> {
    let problem = RecurrenceProblem::frame(1.0, 1.0, 6001);
    let sol = solve(&problem)?;
    println!("phi_0..phi_4 = {:?}", &sol.phi[..5]);
    println!(
        "max relative residual {:.2e} (bound {:.2e})",
        sol.max_residual(),
        sol.residual_bound
    );
    if let Some(e) = sol.exponent {
        println!("a_hat = {:.6} with bars [{:.6}, {:.6}]", e.a_hat, e.bar_low, e.bar_high);
    }
    let gb = sol.gauss_bonnet_estimate(CENTRAL_INDEX)?;
    println!(
        "GB estimate at N = {CENTRAL_INDEX}: {gb:.6} = 8 pi x {:.6}",
        gb / (8.0 * PI)
    );
    println!(
        "sum phi^-2 = {:.6}, tail growth {:.4}",
        sol.volume.inverse_square_sum, sol.volume.tail_growth_exponent
    );

    let check = precision_check(&problem, CENTRAL_INDEX)?;
    println!("standard vs extended at n = 5000: {:.2e}", check.relative_difference());

    // Scaling covariance: (lambda phi0, lambda^2 R) gives lambda phi_n.
    let scaled = solve(&problem.scaled(10.0))?;
    let worst = sol
        .phi
        .iter()
        .zip(&scaled.phi)
        .map(|(a, b)| (b / (10.0 * a) - 1.0).abs())
        .fold(0.0, f64::max);
    println!("scaling covariance, worst relative deviation: {worst:.1e}");
    Ok(())
}
