//! Linear-in-h Bogoliubov coefficients in closed form (dimensionless inputs, L = 1).

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::modes::{CavityConfig, Family, MinkowskiMode};
use crate::numerics::CMatrix;

fn parity_odd(a: i64, b: i64) -> bool {
    (a + b).rem_euclid(2) == 1
}

/// `(alpha_hat, beta_hat)` for bosonic labels `m`, `n` with dimensionless frequencies.
/// The diagonal of `alpha_hat` is reported as zero.
pub fn scalar_entry(family: Family, m: i64, n: i64, wm: f64, wn: f64, mass: f64) -> (f64, f64) {
    if !parity_odd(m, n) {
        return (0.0, 0.0);
    }
    let root = (wm * wn).sqrt();
    let diff = (wm - wn).powi(3) * root;
    let sum = (wm + wn).powi(3) * root;
    match family {
        Family::Dirichlet => {
            let num = PI * PI * (m * n) as f64;
            (-2.0 * num / diff, 2.0 * num / sum)
        }
        _ => {
            let mut a = -2.0 * (wm * wn - mass * mass) / diff;
            let mut b = -2.0 * (wm * wn + mass * mass) / sum;
            if (m == 0) != (n == 0) {
                a /= 2f64.sqrt();
                b /= 2f64.sqrt();
            }
            (a, b)
        }
    }
}

/// Fermionic linear coefficient between inertial modes `k` (row) and `l` (column).
pub fn dirac_entry(k: &MinkowskiMode, l: &MinkowskiMode, mass: f64, length: f64) -> Result<f64> {
    if k.label == l.label || !parity_odd(k.label, l.label) {
        return Ok(0.0);
    }
    let (kk, kl) = (k.k * length, l.k * length);
    let (wk, wl) = (k.omega * length, l.omega * length);
    let (ck, cl) = (wk + kk, wl + kl);
    let m2 = mass * mass;
    let gap = ck * cl - m2;
    if ck == cl || gap == 0.0 {
        return Err(Error::Singular(format!("Dirac coefficient denominator vanishes for labels ({}, {})", k.label, l.label)));
    }
    let num = -4.0 * (kk * kl).abs() * ck * ck * cl * cl * (ck + cl) * (ck * cl + m2);
    let den = (wk * wk + mass).sqrt() * (wl * wl + mass).sqrt() * (ck - cl).powi(3) * gap.powi(3);
    Ok(num / den)
}

/// The h-independent matrices of the linear-order expansion.
#[derive(Clone, Debug, PartialEq)]
pub enum LinearCoefficients {
    Bosonic { alpha_hat: CMatrix, beta_hat: CMatrix },
    Fermionic { a_hat: CMatrix },
}

/// Linear-order data on a label set: rows `row_labels`, columns `col_labels`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearData {
    pub row_labels: Vec<i64>,
    pub col_labels: Vec<i64>,
    /// Inertial frequencies of the row modes (inverse length).
    pub row_frequencies: Vec<f64>,
    /// Inertial frequencies of the column modes (inverse length).
    pub col_frequencies: Vec<f64>,
    pub coefficients: LinearCoefficients,
}

/// Closed-form linear coefficients for arbitrary row and column labels. The Maxwell
/// polarisation-II sign is applied to `beta_hat`.
pub fn linear_coefficients_on(config: &CavityConfig, rows: &[i64], cols: &[i64]) -> Result<LinearData> {
    let family = config.family();
    let probe = CavityConfig { h: 0.0, ..*config };
    let rm = crate::modes::spectrum_for_labels(&probe, crate::modes::Frame::Minkowski, rows, &Default::default())?;
    let cm = crate::modes::spectrum_for_labels(&probe, crate::modes::Frame::Minkowski, cols, &Default::default())?;
    let (rm, cm) = match (rm.modes, cm.modes) {
        (crate::modes::ModeSet::Minkowski(a), crate::modes::ModeSet::Minkowski(b)) => (a, b),
        _ => unreachable!(),
    };
    let l = config.length;
    let mass = config.dimensionless_mass();
    let coefficients = match family {
        Family::Dirac => {
            let mut a_hat = CMatrix::zeros(rows.len(), cols.len());
            for (i, k) in rm.iter().enumerate() {
                for (j, q) in cm.iter().enumerate() {
                    a_hat[(i, j)] = Complex64::new(dirac_entry(k, q, mass, l)?, 0.0);
                }
            }
            LinearCoefficients::Fermionic { a_hat }
        }
        _ => {
            let sign = config.bc.beta_sign();
            let mut alpha_hat = CMatrix::zeros(rows.len(), cols.len());
            let mut beta_hat = CMatrix::zeros(rows.len(), cols.len());
            for (i, a) in rm.iter().enumerate() {
                for (j, b) in cm.iter().enumerate() {
                    let (x, y) = scalar_entry(family, a.label, b.label, a.omega * l, b.omega * l, mass);
                    alpha_hat[(i, j)] = Complex64::new(x, 0.0);
                    beta_hat[(i, j)] = Complex64::new(sign * y, 0.0);
                }
            }
            LinearCoefficients::Bosonic { alpha_hat, beta_hat }
        }
    };
    Ok(LinearData {
        row_labels: rows.to_vec(),
        col_labels: cols.to_vec(),
        row_frequencies: rm.iter().map(|m| m.omega).collect(),
        col_frequencies: cm.iter().map(|m| m.omega).collect(),
        coefficients,
    })
}

/// Closed-form linear coefficients on the standard truncation of size `n`.
pub fn linear_coefficients(config: &CavityConfig, n: usize) -> Result<LinearData> {
    let labels = config.family().truncation_labels(n)?;
    linear_coefficients_on(config, &labels, &labels)
}

/// Largest squared row norm of the linear coefficients over the extended label set, and the
/// largest squared row mass falling outside the truncation, both per unit `h^2`.
pub(crate) fn row_budget(config: &CavityConfig, labels: &[i64]) -> Result<(f64, f64)> {
    let extended = config.family().truncation_labels(4 * labels.len())?;
    let data = linear_coefficients_on(config, labels, &extended)?;
    let mut weight: f64 = 0.0;
    let mut dropped: f64 = 0.0;
    for i in 0..labels.len() {
        let (mut w, mut d) = (0.0, 0.0);
        for (j, lab) in extended.iter().enumerate() {
            let v = match &data.coefficients {
                LinearCoefficients::Bosonic { alpha_hat, beta_hat } => alpha_hat[(i, j)].norm_sqr() + beta_hat[(i, j)].norm_sqr(),
                LinearCoefficients::Fermionic { a_hat } => a_hat[(i, j)].norm_sqr(),
            };
            w += v;
            if !labels.contains(lab) {
                d += v;
            }
        }
        weight = weight.max(w);
        dropped = dropped.max(d);
    }
    Ok((weight, dropped))
}
