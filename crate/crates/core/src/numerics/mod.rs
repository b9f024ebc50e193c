//! Quadrature, ODE stepping, root finding, dense complex matrices and summation helpers.

pub mod interp;
pub mod matrix;
pub mod ode;
pub mod quad;
pub mod roots;
pub mod sum;

pub use matrix::CMatrix;
