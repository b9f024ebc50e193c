//! Bogoliubov transformations accumulated along an acceleration history: exact composition
//! of constant-acceleration segments and the linear-order Fourier formula for general
//! profiles.

mod compose;
mod fourier;
mod profile;

use alloc::vec::Vec;
use num_complex::Complex64;

use crate::bogoliubov::{self, BogoliubovSet, Coefficients, IdentityReport, Method};
use crate::error::{Error, Result};
use crate::modes::CavityConfig;
use crate::numerics::CMatrix;

pub use compose::{evolve_segments, evolve_segments_reversed};
pub use fourier::{drive_transform, evolve_fourier};
pub use profile::{AccelerationProfile, Segment};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EvolutionMethod {
    SegmentComposition,
    FourierLinear,
}

/// Accumulated transformation between inertial modes before and after the profile.
///
/// `set.config.h` holds the peak `a L` of the profile; the identity budget is scaled by the
/// total variation of `a L`, which bounds every linear-order entry.
#[derive(Clone, Debug, PartialEq)]
pub struct EvolutionResult {
    pub set: BogoliubovSet,
    pub method: EvolutionMethod,
    /// Net proper time (negative for a reversed run).
    pub duration: f64,
}

impl EvolutionResult {
    pub fn coefficients(&self) -> &Coefficients {
        &self.set.coefficients
    }

    pub fn labels(&self) -> &[i64] {
        &self.set.labels
    }

    pub fn check_identities(&self) -> IdentityReport {
        bogoliubov::check_identities(&self.set)
    }

    /// Free evolution over the same net proper time.
    pub fn free_phases(&self) -> Coefficients {
        let d: Vec<Complex64> = self.set.inertial_frequencies.iter().map(|w| Complex64::from_polar(1.0, w * self.duration)).collect();
        let n = d.len();
        match self.set.coefficients {
            Coefficients::Bosonic { .. } => Coefficients::Bosonic { alpha: CMatrix::diagonal(&d), beta: CMatrix::zeros(n, n) },
            Coefficients::Fermionic { .. } => Coefficients::Fermionic { a: CMatrix::diagonal(&d) },
        }
    }

    /// Largest entry difference from free evolution.
    pub fn deviation_from_free(&self) -> f64 {
        max_entry_difference(&self.set.coefficients, &self.free_phases())
    }

    /// `next` applied after `self`.
    pub fn then(&self, next: &EvolutionResult) -> Result<EvolutionResult> {
        if self.set.labels != next.set.labels || self.set.config.bc != next.set.config.bc {
            return Err(Error::Domain("evolutions act on different mode sets".into()));
        }
        let fermionic = self.set.is_fermionic();
        let total = &compose::transfer(&next.set.coefficients) * &compose::transfer(&self.set.coefficients);
        let mut out = self.clone();
        out.set.coefficients = compose::split(&total, fermionic);
        out.duration = self.duration + next.duration;
        // linear parts add, so squared row norms at most double
        let weight = |s: &BogoliubovSet| s.config.h * s.config.h * s.linear_row_weight;
        let peak = if self.set.config.h.abs() >= next.set.config.h.abs() { self.set.config.h } else { next.set.config.h };
        out.set.config.h = peak;
        out.set.linear_row_weight = if peak == 0.0 { 0.0 } else { 2.0 * (weight(&self.set) + weight(&next.set)) / (peak * peak) };
        out.set.tail_estimate = 2.0 * (self.set.tail_estimate + next.set.tail_estimate);
        Ok(out)
    }
}

/// Largest entry difference between two coefficient sets of the same kind.
pub fn max_entry_difference(a: &Coefficients, b: &Coefficients) -> f64 {
    match (a, b) {
        (Coefficients::Bosonic { alpha: a1, beta: b1 }, Coefficients::Bosonic { alpha: a2, beta: b2 }) => {
            a1.max_abs_diff(a2).max(b1.max_abs_diff(b2))
        }
        (Coefficients::Fermionic { a: a1 }, Coefficients::Fermionic { a: a2 }) => a1.max_abs_diff(a2),
        _ => f64::INFINITY,
    }
}

fn finish(
    config: &CavityConfig,
    profile: &AccelerationProfile,
    coefficients: Coefficients,
    labels: Vec<i64>,
    frequencies: Vec<f64>,
    method: EvolutionMethod,
    ingredients: Option<Method>,
) -> Result<EvolutionResult> {
    let length = config.length;
    let base = CavityConfig { h: 0.0, ..*config };
    let peak = profile.peak_h(length);
    let variation = profile.variation(length);
    let (weight, dropped) = bogoliubov::row_budget(&base, &labels)?;
    let set = BogoliubovSet {
        coefficients,
        method: ingredients.unwrap_or(Method::PerturbativeLinear),
        config: CavityConfig { h: peak, ..base },
        truncation: labels.len(),
        labels,
        inertial_frequencies: frequencies,
        rindler_frequencies: Vec::new(),
        tail_estimate: variation * variation * dropped,
        linear_row_weight: if peak == 0.0 { 0.0 } else { weight * (variation / peak) * (variation / peak) },
    };
    Ok(EvolutionResult { set, method, duration: profile.duration() })
}
