//! Rosenberg form of the recurrence, with source -c/phi_n^2. A negative c
//! gives growing sequences; a positive one collapses after a few steps.

use moyal_geom::recurrence::{solve, solve_prefix, RecurrenceProblem};

fn main() -> moyal_geom::Result<()> {
    let grow = solve(&RecurrenceProblem::rosenberg(-1.0, 1.0, 1000))?;
    println!(
        "c = -1: phi_999 = {:.6}, tail growth {:.4}, monotone {}",
        grow.phi[999], grow.volume.tail_growth_exponent, grow.monotone
    );

    let (prefix, failure) = solve_prefix(&RecurrenceProblem::rosenberg(1.0, 1.0, 1000))?;
    println!("c = +1: {:?}", prefix);
    if let Some(e) = failure {
        println!("        stopped: {e}");
    }

    // phi_n(lambda phi0, lambda^3 c) = lambda phi_n(phi0, c)
    let base = RecurrenceProblem::rosenberg(-1.0, 1.0, 500);
    let a = solve(&base)?;
    let b = solve(&base.scaled(3.0))?;
    println!("scaled run, phi_499 ratio: {:.15}", b.phi[499] / a.phi[499]);
    Ok(())
}
