//! Commutative family k = A r^(a-1) / (b + r^(2a)): curvature, volume and
//! Gauss-Bonnet integral, closed form against numerics.

use moyal_geom::classical::{
    family_curvature, family_gauss_bonnet, family_volume, gauss_bonnet_quadrature, scalar_curvature_radial,
    ClassicalFactorParams,
};

fn main() -> moyal_geom::Result<()> {
    for (a_scale, a, b) in [(1.0, 1.0, 1.0), (2.0, 1.0, 0.5), (1.0, 2.0, 1.0), (0.7, 3.5, 2.0)] {
        let p = ClassicalFactorParams::new(a_scale, a, b)?;
        let worst = [0.05, 0.5, 1.0, 3.0, 20.0]
            .iter()
            .map(|&r| scalar_curvature_radial(&p, r).map(|v| (v / family_curvature(&p) - 1.0).abs()))
            .collect::<moyal_geom::Result<Vec<_>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        println!(
            "A={a_scale} a={a} b={b}: R={:.6} (worst rel. dev {worst:.1e}), V={:.6}, GB={:.6}, quadrature={:.6}",
            family_curvature(&p),
            family_volume(&p),
            family_gauss_bonnet(&p),
            gauss_bonnet_quadrature(&p, 1e4)?
        );
    }
    Ok(())
}
