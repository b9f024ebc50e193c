#[cfg(test)]
use core::f64::consts::PI;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::gamma::ln_gamma;
use crate::error::{Error, Result};
use crate::numerics::sum::CompensatedComplex;

/// Default accuracy target, absolute or relative (whichever is looser).
pub const DEFAULT_TOL: f64 = 1e-12;
/// Largest supported argument.
pub const MAX_ARGUMENT: f64 = 120.0;
/// Largest supported `|Im nu|`.
pub const MAX_ORDER_IMAG: f64 = 80.0;

const MAX_TERMS: usize = 20_000;

/// A Bessel value together with a rigorous-style error bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BesselValue {
    pub value: Complex64,
    pub error_bound: f64,
    pub terms: usize,
}

/// `I_nu(x)` with the default tolerance.
pub fn bessel_i(nu: Complex64, x: f64) -> Result<BesselValue> {
    bessel_i_tol(nu, x, DEFAULT_TOL)
}

/// `I_nu(x)` for complex order and real positive argument, by the ascending series.
///
/// Fails with [`Error::AccuracyLoss`] when the error bound exceeds `tol * max(1, |I|)`.
pub fn bessel_i_tol(nu: Complex64, x: f64, tol: f64) -> Result<BesselValue> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(alloc::format!("Bessel argument must be positive, got {x}")));
    }
    if x > MAX_ARGUMENT || nu.im.abs() > MAX_ORDER_IMAG || nu.re.abs() > 50.0 {
        return Err(Error::Domain(alloc::format!("Bessel evaluation outside supported range (x = {x}, nu = {nu})")));
    }
    if !(tol > 0.0) {
        return Err(Error::Domain("tolerance must be positive".into()));
    }
    let mut nu = nu;
    if nu.im == 0.0 && nu.re < 0.0 && nu.re == nu.re.round() {
        nu = -nu;
    }

    let half = 0.5 * x;
    let q = half * half;
    let ln_g = ln_gamma(nu + 1.0);
    let log_pref = nu * half.ln() - ln_g;
    let pref = log_pref.exp();

    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = CompensatedComplex::new();
    sum.add(term);
    let mut abs_sum = 1.0;
    let mut quiet = 0;
    let mut ratio_abs;
    let mut k = 0usize;
    loop {
        k += 1;
        if k > MAX_TERMS {
            return Err(Error::AccuracyLoss { bound: f64::INFINITY, tolerance: tol });
        }
        let ratio = q / ((nu + k as f64) * k as f64);
        ratio_abs = ratio.norm();
        term *= ratio;
        sum.add(term);
        abs_sum += term.norm();
        let s = sum.value().norm();
        if term.norm() < tol * s && ratio_abs < 1.0 {
            quiet += 1;
            if quiet >= 3 {
                break;
            }
        } else {
            quiet = 0;
        }
    }
    let s = sum.value();
    let value = pref * s;
    let pref_abs = pref.norm();
    let truncation = term.norm() * ratio_abs / (1.0 - ratio_abs);
    let rounding = 8.0 * f64::EPSILON * (k as f64 + 4.0) * abs_sum;
    let prefactor_rel = 4.0 * f64::EPSILON * ((nu * half.ln()).norm() + ln_g.norm() + 10.0) + 2e-15;
    let error_bound = pref_abs * (truncation + rounding) + value.norm() * prefactor_rel;
    if !value.re.is_finite() || !value.im.is_finite() || error_bound > tol * value.norm().max(1.0) {
        return Err(Error::AccuracyLoss { bound: error_bound, tolerance: tol });
    }
    Ok(BesselValue { value, error_bound, terms: k + 1 })
}

/// `I'_nu(x) = (I_{nu-1}(x) + I_{nu+1}(x)) / 2` with the default tolerance.
pub fn bessel_i_deriv(nu: Complex64, x: f64) -> Result<BesselValue> {
    bessel_i_deriv_tol(nu, x, DEFAULT_TOL)
}

pub fn bessel_i_deriv_tol(nu: Complex64, x: f64, tol: f64) -> Result<BesselValue> {
    let lo = bessel_i_tol(nu - 1.0, x, tol)?;
    let hi = bessel_i_tol(nu + 1.0, x, tol)?;
    Ok(BesselValue {
        value: (lo.value + hi.value) * 0.5,
        error_bound: 0.5 * (lo.error_bound + hi.error_bound),
        terms: lo.terms.max(hi.terms),
    })
}

/// Wronskian `I_nu I'_{-nu} - I_{-nu} I'_nu = -2 sin(nu pi) / (pi x)`.
#[cfg(test)]
fn wronskian_expected(nu: Complex64, x: f64) -> Complex64 {
    -(nu * PI).sin() * 2.0 / (PI * x)
}
