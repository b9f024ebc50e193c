//! Accelerated-frame modes from modified Bessel functions of imaginary order.

use alloc::vec::Vec;
use num_complex::Complex64;

use super::rindler::{root_count, Geometry};
use super::{minkowski, CavityConfig, Family};
use crate::error::{Error, Result};
use crate::numerics::roots::brent;
use crate::specfun::{bessel_i_deriv_tol, bessel_i_tol, MAX_ORDER_IMAG};

/// Largest far-wall argument `mu * chi1` routed to the series by the automatic backend.
const AUTO_MAX_ARGUMENT: f64 = 40.0;

fn im(omega: f64) -> Complex64 {
    Complex64::new(0.0, omega)
}

pub(super) fn in_range(config: &CavityConfig, estimates: &[f64]) -> bool {
    let top = estimates.iter().fold(0.0f64, |m, e| m.max(e.abs()));
    config.mass > 0.0 && config.mass * config.chi1() <= AUTO_MAX_ARGUMENT && 1.5 * top + 2.0 <= MAX_ORDER_IMAG
}

/// Conjugated wall factor so that `Im(wall * I_{i omega}(x))` vanishes (or has vanishing slope) at `x0`.
pub(super) fn scalar_wall(family: Family, omega: f64, x0: f64, tol: f64) -> Result<Complex64> {
    let w = match family {
        Family::Dirichlet => bessel_i_tol(im(omega), x0, tol)?.value,
        _ => bessel_i_deriv_tol(im(omega), x0, tol)?.value,
    };
    Ok(w.conj())
}

pub(super) fn scalar_raw(wall: Complex64, omega: f64, x: f64, tol: f64) -> Result<f64> {
    Ok((wall * bessel_i_tol(im(omega), x, tol)?.value).im)
}

/// d/dchi of [`scalar_raw`] at radius `chi`.
pub(super) fn scalar_raw_slope(wall: Complex64, omega: f64, mu: f64, chi: f64, tol: f64) -> Result<f64> {
    Ok(mu * (wall * bessel_i_deriv_tol(im(omega), mu * chi, tol)?.value).im)
}

/// `I_{-i omega - 1/2}(x0) - I_{-i omega + 1/2}(x0)`.
pub(super) fn spinor_wall(omega: f64, x0: f64, tol: f64) -> Result<Complex64> {
    let a = bessel_i_tol(Complex64::new(-0.5, -omega), x0, tol)?.value;
    let b = bessel_i_tol(Complex64::new(0.5, -omega), x0, tol)?.value;
    Ok(a - b)
}

/// Spinor components of the right-pointing cavity mode at `x = mu chi`, unnormalised.
pub(super) fn spinor_raw(p_minus: Complex64, omega: f64, x: f64, tol: f64) -> Result<[Complex64; 2]> {
    let lower = bessel_i_tol(Complex64::new(-0.5, omega), x, tol)?.value;
    let upper = bessel_i_tol(Complex64::new(0.5, omega), x, tol)?.value;
    let a = p_minus * lower + p_minus.conj() * upper.conj();
    let b = Complex64::i() * (p_minus * upper + p_minus.conj() * lower.conj());
    Ok([a, b])
}

/// Normalised eigencondition residual; its zeros are the accelerated eigenfrequencies.
pub fn eigencondition(family: Family, omega: f64, x0: f64, x1: f64, tol: f64) -> Result<f64> {
    match family {
        Family::Dirac => {
            let p_minus = spinor_wall(omega, x0, tol)?;
            let p_plus =
                bessel_i_tol(Complex64::new(-0.5, -omega), x1, tol)?.value + bessel_i_tol(Complex64::new(0.5, -omega), x1, tol)?.value;
            Ok((p_minus * p_plus.conj()).re / (p_minus.norm() * p_plus.norm()))
        }
        _ => {
            let (w0, w1) = match family {
                Family::Dirichlet => (bessel_i_tol(im(omega), x0, tol)?.value, bessel_i_tol(im(omega), x1, tol)?.value),
                _ => (bessel_i_deriv_tol(im(omega), x0, tol)?.value, bessel_i_deriv_tol(im(omega), x1, tol)?.value),
            };
            Ok((w0.conj() * w1).im / (w0.norm() * w1.norm()))
        }
    }
}

/// Index of a label among the positive-frequency roots, and whether it is the mirrored root.
fn root_index(family: Family, label: i64) -> (usize, bool) {
    match family {
        Family::Dirichlet => ((label - 1) as usize, false),
        Family::Neumann => (label as usize, false),
        Family::Dirac if label >= 0 => (label as usize, false),
        Family::Dirac => ((-label - 1) as usize, true),
    }
}

pub(super) fn eigenfrequencies(config: &CavityConfig, labels: &[i64], tol: f64) -> Result<Vec<f64>> {
    let family = config.family();
    let mu = config.mass;
    let g = Geometry::new(config);
    if !(mu > 0.0) {
        return Err(Error::Unsupported("the Bessel route needs a positive mass".into()));
    }
    let needed = labels.iter().map(|&l| root_index(family, l).0 + 1).max().unwrap_or(0);
    if needed == 0 {
        return Ok(Vec::new());
    }
    // inertial predictions for the positive roots
    let h = config.h.abs();
    let first = if family == Family::Dirichlet { 1 } else { 0 };
    let predicted: Vec<f64> =
        minkowski::modes(config, &(first..first + needed as i64 + 1).collect::<Vec<_>>())?.iter().map(|m| m.omega * g.length / h).collect();
    let spacing = predicted.windows(2).fold(f64::INFINITY, |m, w| m.min(w[1] - w[0]));
    let widest = predicted.windows(2).fold(0.0f64, |m, w| m.max(w[1] - w[0]));
    let step = 0.1 * spacing;
    let limit = 2.0 * predicted[needed - 1] + 10.0 * widest;
    let (x0, x1) = (mu * g.chi0, mu * g.chi1);
    let cond = |omega: f64| eigencondition(family, omega, x0, x1, tol);

    let mut roots = Vec::with_capacity(needed);
    let mut w = (1e-3 * predicted[0]).min(0.5 * step);
    let mut fw = cond(w)?;
    while roots.len() < needed {
        let next = if w < step { (1.5 * w).min(step) } else { w + step };
        if next > limit {
            return Err(Error::MissedRoot { expected: needed, found: roots.len() });
        }
        let fnext = cond(next)?;
        if fw == 0.0 {
            roots.push(w);
        } else if fw.signum() != fnext.signum() {
            roots.push(brent(&cond, w, next, (tol * 1e-2).max(4.0 * f64::EPSILON) * next, 200)?);
        }
        w = next;
        fw = fnext;
    }
    // cross-check the number of roots against the oscillation count of the phase equation
    let check_at = roots[needed - 1] + 0.5 * step;
    let count = root_count(config, check_at)?;
    if count != needed {
        return Err(Error::MissedRoot { expected: count, found: needed });
    }
    Ok(labels
        .iter()
        .map(|&l| {
            let (j, mirrored) = root_index(family, l);
            if mirrored {
                -roots[j]
            } else {
                roots[j]
            }
        })
        .collect())
}
