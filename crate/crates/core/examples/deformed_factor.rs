//! Order theta^2 deformation of the Fubini-Study factor: epsilon(r), the
//! ODE it solves, and the deformed factor table for several theta.

use moyal_geom::perturbative::{
    composition_residual, epsilon_ode_residual, epsilon_regular, epsilon_regular_fn, FactorTable, FubiniStudy,
};

fn main() -> moyal_geom::Result<()> {
    let (eta, c1) = (0.5, -1.0 / 3.0);
    let eps = epsilon_regular_fn(c1, eta);
    for r in [0.0, 0.5, 1.0, 4.0] {
        let ode = if r > 0.0 {
            format!("{:.1e}", epsilon_ode_residual(&eps, eta, r)?)
        } else {
            "-".into()
        };
        println!("eps({r}) = {:+.8}   ODE residual {ode}", epsilon_regular(r, c1, eta)?);
    }

    let fs = FubiniStudy { eta };
    for theta in [0.1, 0.05] {
        println!(
            "f * f^-1 - 1 at r=1, theta={theta}: {:.3e}",
            composition_residual(&fs, theta, 1.0)?
        );
    }

    let radii = FactorTable::uniform_radii(10.0, 11);
    let table = FactorTable::compute(eta, c1, &[0.0, 0.5, 1.0], &radii)?;
    table.write_csv(std::io::stdout())?;
    Ok(())
}
