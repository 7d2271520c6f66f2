//! Matrix-basis functions f_{m,n}: partition of unity, the number operator,
//! power expansions and the star product as matrix multiplication.

use moyal_geom::matrix_basis::{
    basis_eval, eval_radial_series, partition_sums, radial_power_coefficients, MatrixOperator,
};

fn main() -> moyal_geom::Result<()> {
    let theta = 1.0;
    println!("  r    sum f_nn (raw, averaged)    sum n f_nn (averaged) vs (r^2/theta - 1)/2");
    for r in [0.0, 0.5, 2.0, 5.0] {
        let s = partition_sums(400, theta, r)?;
        println!(
            "{r:4.1}   {:+.6} {:.12}   {:.10} vs {:.10}",
            s.raw_unit,
            s.unit,
            s.number,
            (r * r / theta - 1.0) / 2.0
        );
    }

    // r^2 = sum_n theta (2n + 1) f_nn
    let c = radial_power_coefficients(2.0, 60, theta)?;
    println!(
        "r^2 at r = 1.3 from 60 diagonal terms: {:.10}",
        eval_radial_series(&c, theta, 1.3)?
    );

    // f_{0,1} * f_{1,0} = f_{0,0}
    let dim = 4;
    let a = MatrixOperator::basis_element(theta, dim, 0, 1)?;
    let b = MatrixOperator::basis_element(theta, dim, 1, 0)?;
    let prod = a.star(&b)?;
    println!("(f01 * f10)_00 = {}, trace = {}", prod.get(0, 0), prod.trace());
    println!("f_23(0.8, 0.3) = {}", basis_eval(2, 3, theta, 0.8, 0.3)?);
    Ok(())
}
