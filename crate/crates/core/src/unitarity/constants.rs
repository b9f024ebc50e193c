use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;

use super::sums::asymptotic_limit;
use crate::error::Result;
use crate::modes::Family;
use crate::numerics::quad::{integrate, QuadOptions};

/// A large-mass limit evaluated as a 2-D integral next to its closed form.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LimitConstant {
    pub family: Family,
    pub value: f64,
    pub closed_form: f64,
    pub relative_error: f64,
    /// Quadrature error estimate (absolute).
    pub error_estimate: f64,
}

/// Integrand of the limit in the variables `t = 1/u` with `x = (u - 1/u)/2`, so that
/// `sqrt(1 + x^2) = (1/t + t)/2` and `sqrt(1 + x^2) + x = 1/t`, both on `(0, 1)`.
fn integrand(family: Family, t: f64, s: f64) -> f64 {
    let (u, v) = (1.0 / t, 1.0 / s);
    let (x, y) = (0.5 * (u - t), 0.5 * (v - s));
    let (cx, cy) = (0.5 * (u + t), 0.5 * (v + s));
    let jac = 0.5 * (u * u + 1.0) * 0.5 * (v * v + 1.0);
    let f = match family {
        Family::Dirichlet => 2.0 / (PI * PI) * x * x * y * y / (cx * cy * (cx + cy).powi(6)),
        Family::Neumann => 2.0 / (PI * PI) * (cx * cy + 1.0).powi(2) / (cx * cy * (cx + cy).powi(6)),
        Family::Dirac => {
            let num = (u - v).powi(2) * (u * v - 1.0).powi(2) * x * x * y * y * u.powi(4) * v.powi(4);
            let den = (u + v).powi(6) * (u * v + 1.0).powi(6) * (1.0 + x * x) * (1.0 + y * y);
            8.0 / (PI * PI) * num / den
        }
    };
    let v = f * jac;
    // far corner: the integrand vanishes but intermediate powers overflow
    if v.is_finite() {
        v
    } else {
        0.0
    }
}

/// One limit by nested adaptive Gauss-Kronrod quadrature on the unit square.
pub fn limit_constant(family: Family, tol: f64) -> Result<LimitConstant> {
    let inner_opts = QuadOptions { abs_tol: 0.0, rel_tol: 0.01 * tol, max_intervals: 2000 };
    let outer_opts = QuadOptions { abs_tol: 0.0, rel_tol: tol, max_intervals: 2000 };
    let mut failure = None;
    let mut inner_error: f64 = 0.0;
    let outer = integrate(
        |t| match integrate(|s| integrand(family, t, s), 0.0, 1.0, &inner_opts) {
            Ok(r) => {
                inner_error = inner_error.max(r.error);
                r.value
            }
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        },
        0.0,
        1.0,
        &outer_opts,
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    let closed_form = asymptotic_limit(family);
    Ok(LimitConstant {
        family,
        value: outer.value,
        closed_form,
        relative_error: (outer.value - closed_form).abs() / closed_form,
        error_estimate: outer.error + inner_error,
    })
}

/// The Dirichlet, Neumann and Dirac limits.
pub fn limit_constants(tol: f64) -> Result<[LimitConstant; 3]> {
    Ok([limit_constant(Family::Dirichlet, tol)?, limit_constant(Family::Neumann, tol)?, limit_constant(Family::Dirac, tol)?])
}
