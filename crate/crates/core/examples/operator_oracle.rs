//! Curvature of a truncated solver output computed at operator level: the
//! diagonal should be R/theta away from the truncation edge.

use moyal_geom::matrix_basis::{frame_scalar_curvature, RadialOperator};
use moyal_geom::recurrence::{solve, RecurrenceProblem};

fn main() -> moyal_geom::Result<()> {
    let (curvature, theta, n) = (1.0, 0.5, 200);
    let sol = solve(&RecurrenceProblem::frame(curvature, 1.0, n))?;
    let h = RadialOperator::new(theta, sol.phi)?;
    let r = frame_scalar_curvature(&h)?;
    let clean = r.clean_dim();
    let target = curvature / theta;
    let worst = r.diagonal()[..clean]
        .iter()
        .map(|z| (z.re / target - 1.0).abs())
        .fold(0.0, f64::max);
    println!("clean block {clean} of {n}");
    println!("diagonal vs R/theta = {target}: worst relative deviation {worst:.2e}");
    println!("largest off-diagonal entry {:.2e}", r.max_off_diagonal(clean));
    println!("first entries {:?}", &r.diagonal()[..3]);
    println!("entry at the truncation edge {}", r.get(n - 1, n - 1));
    Ok(())
}
