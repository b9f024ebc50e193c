use num_complex::Complex64;

use super::{closed_form, BogoliubovSet, Coefficients, Method};
use crate::error::{Error, Result};
use crate::modes::{spectrum_for_labels, CavityConfig, Family, Frame, ModeSet, SolverOptions};
use crate::numerics::CMatrix;

/// Bogoliubov coefficients from the inner products of accelerated and inertial modes on the
/// `t = 0` slice.
///
/// Bosonic: `alpha_mn = (phi^R_m, phi^M_n)` and `beta_mn = -(phi^R_m, conj phi^M_n)`.
/// Fermionic: `A_kl = (psi_l, Psi_k)` with rows the accelerated labels.
pub fn coefficients_quadrature(config: &CavityConfig, n: usize, opts: &SolverOptions) -> Result<BogoliubovSet> {
    config.validate()?;
    if config.h == 0.0 {
        return Err(Error::Domain("quadrature coefficients need h != 0".into()));
    }
    let family = config.family();
    let labels = family.truncation_labels(n)?;
    let rindler = spectrum_for_labels(config, Frame::Rindler, &labels, opts)?;
    let inertial = spectrum_for_labels(&CavityConfig { h: 0.0, ..*config }, Frame::Minkowski, &labels, opts)?;
    let (ModeSet::Rindler(rm), ModeSet::Minkowski(mm)) = (&rindler.modes, &inertial.modes) else { unreachable!() };
    if rm.len() < n || mm.len() < n {
        return Err(Error::Truncation { requested: n, available: rm.len().min(mm.len()) });
    }
    let coefficients = match family {
        Family::Dirac => {
            let mut a = CMatrix::zeros(n, n);
            for (i, r) in rm.iter().enumerate() {
                for (j, v) in r.spinor_overlaps(mm, opts.tol)?.into_iter().enumerate() {
                    a[(i, j)] = v;
                }
            }
            Coefficients::Fermionic { a }
        }
        _ => {
            let sign = config.bc.beta_sign();
            let mut alpha = CMatrix::zeros(n, n);
            let mut beta = CMatrix::zeros(n, n);
            for (i, r) in rm.iter().enumerate() {
                let (al, be) = r.scalar_overlaps(mm, opts.tol)?;
                for j in 0..n {
                    alpha[(i, j)] = Complex64::new(al[j], 0.0);
                    beta[(i, j)] = Complex64::new(sign * be[j], 0.0);
                }
            }
            Coefficients::Bosonic { alpha, beta }
        }
    };
    let (weight, tail) = closed_form::row_budget(config, &labels)?;
    Ok(BogoliubovSet {
        coefficients,
        method: Method::Quadrature,
        config: *config,
        truncation: n,
        labels,
        inertial_frequencies: mm.iter().map(|m| m.omega).collect(),
        rindler_frequencies: rm.iter().map(|m| m.omega).collect(),
        tail_estimate: config.h * config.h * tail,
        linear_row_weight: weight,
    })
}
