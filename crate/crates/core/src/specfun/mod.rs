//! Complex log-gamma and modified Bessel functions of the first kind with complex order.

mod bessel;
mod gamma;

pub use bessel::{bessel_i, bessel_i_deriv, bessel_i_deriv_tol, bessel_i_tol, BesselValue, DEFAULT_TOL, MAX_ARGUMENT, MAX_ORDER_IMAG};
pub use gamma::{gamma, ln_gamma, ln_sin_pi};
