//! Order `theta^2` expansions of the radial Moyal calculus and the
//! corrected Fubini-Study factor `h = eta (1 + r^2) + theta^2 eps(r)`.

mod epsilon;
mod expansion;
mod radial;
mod table;

pub use epsilon::{
    deformed_conformal_factor, epsilon_general, epsilon_ode_residual, epsilon_regular, epsilon_regular_fn, regular_c2,
    EpsilonGeneral, PerturbativeParams,
};
pub use expansion::{
    composition_residual, gradient_sandwich_correction, gradient_sandwich_theta2, inverse_theta2, star_theta2,
    star_theta2_jets, MoyalInverse,
};
pub use radial::{finite_difference_jet3, FnRadial, FubiniStudy, Jet3, RadialPolynomial, SmoothRadialFunction};
pub use table::FactorTable;
