//! Bogoliubov coefficients between inertial and accelerated cavity modes: numerical inner
//! products, closed-form linear-order expressions, symmetry rules and identity checks.

mod closed_form;
mod quadrature;

use alloc::vec::Vec;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::modes::{CavityConfig, Polarisation};
use crate::numerics::CMatrix;

pub(crate) use closed_form::row_budget;
pub use closed_form::{dirac_entry, linear_coefficients, linear_coefficients_on, scalar_entry, LinearCoefficients, LinearData};
pub use quadrature::coefficients_quadrature;

/// How a coefficient set was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Quadrature,
    PerturbativeLinear,
}

/// Coefficient matrices. Bosonic rows index accelerated modes, columns inertial modes.
#[derive(Clone, Debug, PartialEq)]
pub enum Coefficients {
    Bosonic { alpha: CMatrix, beta: CMatrix },
    Fermionic { a: CMatrix },
}

/// A truncated Bogoliubov transformation with its bookkeeping.
#[derive(Clone, Debug, PartialEq)]
pub struct BogoliubovSet {
    pub coefficients: Coefficients,
    pub method: Method,
    pub config: CavityConfig,
    pub truncation: usize,
    /// Mode labels of both rows and columns, ascending.
    pub labels: Vec<i64>,
    /// Inertial frequencies of the labels (inverse length).
    pub inertial_frequencies: Vec<f64>,
    /// Dimensionless accelerated-frame frequencies of the row modes.
    pub rindler_frequencies: Vec<f64>,
    /// Largest squared row mass outside the truncation, estimated from the closed forms.
    pub tail_estimate: f64,
    /// Largest squared row norm of the linear coefficients (per unit `h^2`).
    pub linear_row_weight: f64,
}

impl BogoliubovSet {
    pub fn h(&self) -> f64 {
        self.config.h
    }

    pub fn dimensionless_mass(&self) -> f64 {
        self.config.dimensionless_mass()
    }

    pub fn is_fermionic(&self) -> bool {
        matches!(self.coefficients, Coefficients::Fermionic { .. })
    }

    /// Matrix index of a label.
    pub fn index_of(&self, label: i64) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    /// Allowed O(h^2) plus truncation-tail size of identity residuals.
    pub fn identity_budget(&self) -> f64 {
        let h2 = self.config.h * self.config.h;
        4.0 * (2.0 * h2 * self.linear_row_weight + self.tail_estimate) + 1e-10
    }
}

/// Identity matrix plus `h` times the closed-form linear coefficients.
pub fn coefficients_perturbative(config: &CavityConfig, n: usize) -> Result<BogoliubovSet> {
    config.validate()?;
    let data = linear_coefficients(config, n)?;
    let h = Complex64::new(config.h, 0.0);
    let id = CMatrix::identity(n);
    let coefficients = match &data.coefficients {
        LinearCoefficients::Bosonic { alpha_hat, beta_hat } => {
            Coefficients::Bosonic { alpha: &id + &alpha_hat.scale(h), beta: beta_hat.scale(h) }
        }
        LinearCoefficients::Fermionic { a_hat } => Coefficients::Fermionic { a: &id + &a_hat.scale(h) },
    };
    let (weight, tail) = closed_form::row_budget(config, &data.row_labels)?;
    let rindler_frequencies =
        if config.h == 0.0 { Vec::new() } else { data.row_frequencies.iter().map(|w| w * config.length / config.h.abs()).collect() };
    Ok(BogoliubovSet {
        coefficients,
        method: Method::PerturbativeLinear,
        config: *config,
        truncation: n,
        labels: data.row_labels,
        inertial_frequencies: data.row_frequencies,
        rindler_frequencies,
        tail_estimate: config.h * config.h * tail,
        linear_row_weight: weight,
    })
}

/// Negates beta for polarisation II; leaves polarisation I untouched.
pub fn apply_maxwell_sign(set: &BogoliubovSet, pol: Polarisation) -> Result<BogoliubovSet> {
    match (&set.coefficients, pol) {
        (Coefficients::Fermionic { .. }, _) => Err(Error::Unsupported("the polarisation sign rule applies to bosonic sets".into())),
        (_, Polarisation::I) => Ok(set.clone()),
        (Coefficients::Bosonic { alpha, beta }, Polarisation::II) => {
            let mut out = set.clone();
            out.coefficients = Coefficients::Bosonic { alpha: alpha.clone(), beta: beta.scale(Complex64::new(-1.0, 0.0)) };
            Ok(out)
        }
    }
}

/// Multiplies entry `(i, j)` by `(-1)^(label_i + label_j)`: the map between the two
/// directions of acceleration.
pub fn phase_rule_transform(set: &BogoliubovSet) -> BogoliubovSet {
    let labels = set.labels.clone();
    let flip = move |i: usize, j: usize, z: Complex64| if (labels[i] + labels[j]).rem_euclid(2) == 1 { -z } else { z };
    let mut out = set.clone();
    out.coefficients = match &set.coefficients {
        Coefficients::Bosonic { alpha, beta } => Coefficients::Bosonic { alpha: alpha.map(&flip), beta: beta.map(&flip) },
        Coefficients::Fermionic { a } => Coefficients::Fermionic { a: a.map(&flip) },
    };
    out.config.h = -set.config.h;
    out
}

/// One identity residual.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub residual: f64,
}

/// Max-norm residuals of the Bogoliubov identities with the expected budget.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
    pub budget: f64,
    pub within_budget: bool,
}

impl IdentityReport {
    pub fn max_residual(&self) -> f64 {
        self.checks.iter().fold(0.0, |m, c| m.max(c.residual))
    }
}

/// Residual max-norms of the identities over the truncated block.
pub fn identity_residuals(coefficients: &Coefficients) -> Vec<IdentityCheck> {
    match coefficients {
        Coefficients::Bosonic { alpha, beta } => {
            let n = alpha.rows();
            let norm = &(&(alpha * &alpha.adjoint()) - &(beta * &beta.adjoint())) - &CMatrix::identity(n);
            let sym = &(alpha * &beta.transpose()) - &(beta * &alpha.transpose());
            alloc::vec![
                IdentityCheck { name: "alpha alpha^dagger - beta beta^dagger - I", residual: norm.max_abs() },
                IdentityCheck { name: "alpha beta^T - beta alpha^T", residual: sym.max_abs() },
            ]
        }
        Coefficients::Fermionic { a } => {
            let n = a.rows();
            let left = &(a * &a.adjoint()) - &CMatrix::identity(n);
            let right = &(&a.adjoint() * a) - &CMatrix::identity(n);
            alloc::vec![
                IdentityCheck { name: "A A^dagger - I", residual: left.max_abs() },
                IdentityCheck { name: "A^dagger A - I", residual: right.max_abs() },
            ]
        }
    }
}

pub fn check_identities(set: &BogoliubovSet) -> IdentityReport {
    let checks = identity_residuals(&set.coefficients);
    let budget = set.identity_budget();
    let within_budget = checks.iter().all(|c| c.residual <= budget);
    IdentityReport { checks, budget, within_budget }
}

/// Per-row normalisation deficits `1 - sum_j (|alpha|^2 - |beta|^2)` or `1 - sum_j |A|^2`.
pub fn row_deficits(coefficients: &Coefficients) -> Vec<f64> {
    match coefficients {
        Coefficients::Bosonic { alpha, beta } => (0..alpha.rows())
            .map(|i| 1.0 - alpha.row(i).iter().zip(beta.row(i)).map(|(a, b)| a.norm_sqr() - b.norm_sqr()).sum::<f64>())
            .collect(),
        Coefficients::Fermionic { a } => (0..a.rows()).map(|i| 1.0 - a.row(i).iter().map(|z| z.norm_sqr()).sum::<f64>()).collect(),
    }
}
