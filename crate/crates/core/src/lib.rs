//! Quantile-based statistics on finite step distributions: step CDFs under
//! first-order stochastic dominance, lower and upper quantiles, adjusted
//! quantiles in four equivalent parametrizations, comonotone couplings, and
//! a randomized harness for the axioms these statistics satisfy.

pub mod adjusted;
pub mod cdf;
pub mod cli_io;
pub mod comonotone;
pub mod error;
pub mod exact;
pub mod harness;
pub mod quantiles;

pub use adjusted::{
    c_to_phi, d_to_psi, dual_handicap_of, dual_shape_of, handicap_of_dual, phi_to_c, psi_to_d,
    quantile_handicap, rho_c, rho_d, rho_phi, rho_psi, shape_of_dual, Binding, DualHandicapFn,
    DualShapeFn, HandicapFn, ShapeFn, Statistic,
};
pub use cdf::{levy_distance, Probability, StepCdf};
pub use comonotone::{check_lattice_commutation, comonotone_coupling, FiniteJoint, Marginal, LatticeCommutation};
pub use error::{Error, Result};
pub use quantiles::{lower_quantile, upper_quantile};
