use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::{CavityConfig, Family, FieldValue};
use crate::error::{Error, Result};
use crate::numerics::roots::brent;

/// An inertial cavity mode.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MinkowskiMode {
    pub label: i64,
    pub family: Family,
    /// Wavenumber (signed for Dirac).
    pub k: f64,
    /// Frequency (signed for Dirac).
    pub omega: f64,
    pub norm: f64,
    /// Dirac mixing angle `arctan(mu / k) / 2`; zero for scalars.
    pub half_angle: f64,
    pub mass: f64,
}

/// `n`-th positive root of `m sin x + x cos x = 0`, in `((n + 1/2) pi, (n + 1) pi)`.
pub fn dirac_root(m: f64, n: usize) -> Result<f64> {
    let lo = (n as f64 + 0.5) * PI;
    let hi = (n as f64 + 1.0) * PI;
    brent(|x| Ok(m * x.sin() + x * x.cos()), lo, hi, 1e-15 * hi, 200)
}

pub(crate) fn modes(config: &CavityConfig, labels: &[i64]) -> Result<Vec<MinkowskiMode>> {
    let l = config.length;
    let mu = config.mass;
    let family = config.family();
    labels
        .iter()
        .map(|&label| {
            let (k, omega, norm, half_angle) = match family {
                Family::Dirichlet | Family::Neumann => {
                    let min = if family == Family::Dirichlet { 1 } else { 0 };
                    if label < min {
                        return Err(Error::Domain(format!("label {label} invalid for {family:?}")));
                    }
                    let k = label as f64 * PI / l;
                    let omega = (mu * mu + k * k).sqrt();
                    let mut norm = 1.0 / (omega * l).sqrt();
                    if label == 0 {
                        norm /= 2f64.sqrt();
                    }
                    (k, omega, norm, 0.0)
                }
                Family::Dirac => {
                    let j = if label >= 0 { label as usize } else { (-label - 1) as usize };
                    let x = dirac_root(mu * l, j)?;
                    let k = if label >= 0 { x / l } else { -x / l };
                    let omega = k.signum() * (mu * mu + k * k).sqrt();
                    let norm = (omega * omega / (2.0 * l * (omega * omega + mu / l))).sqrt();
                    (k, omega, norm, 0.5 * (mu / k).atan())
                }
            };
            Ok(MinkowskiMode { label, family, k, omega, norm, half_angle, mass: mu })
        })
        .collect()
}

impl MinkowskiMode {
    /// Spatial profile at distance `xi` from the reference wall.
    pub fn spatial(&self, xi: f64) -> FieldValue {
        match self.family {
            Family::Dirichlet => FieldValue::Scalar(Complex64::new(self.norm * (self.k * xi).sin(), 0.0)),
            Family::Neumann => FieldValue::Scalar(Complex64::new(self.norm * (self.k * xi).cos(), 0.0)),
            Family::Dirac => FieldValue::Spinor(self.spinor(xi)),
        }
    }

    /// Real scalar profile (zero for Dirac modes).
    pub fn scalar(&self, xi: f64) -> f64 {
        match self.family {
            Family::Dirichlet => self.norm * (self.k * xi).sin(),
            Family::Neumann => self.norm * (self.k * xi).cos(),
            Family::Dirac => 0.0,
        }
    }

    /// Spinor components along `U+`, `U-`.
    pub fn spinor(&self, xi: f64) -> [Complex64; 2] {
        let (s, c) = self.half_angle.sin_cos();
        let fwd = Complex64::from_polar(self.norm, self.k * xi - self.half_angle);
        let bwd = Complex64::i() * Complex64::from_polar(self.norm, self.half_angle - self.k * xi);
        [fwd * c + bwd * s, fwd * s + bwd * c]
    }
}
