use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use num_complex::Complex64;

use super::profile::{AccelerationProfile, Segment};
use super::{finish, EvolutionMethod, EvolutionResult};
use crate::bogoliubov::{coefficients_perturbative, coefficients_quadrature, linear_coefficients, BogoliubovSet, Coefficients, Method};
use crate::error::{Error, Result};
use crate::modes::{CavityConfig, SolverOptions};
use crate::numerics::CMatrix;

/// Full transfer matrix: `[[alpha, beta], [conj beta, conj alpha]]` for bosons, `A` for fermions.
pub(crate) fn transfer(c: &Coefficients) -> CMatrix {
    match c {
        Coefficients::Bosonic { alpha, beta } => CMatrix::block(alpha, beta, &beta.conj(), &alpha.conj()),
        Coefficients::Fermionic { a } => a.clone(),
    }
}

pub(crate) fn split(m: &CMatrix, fermionic: bool) -> Coefficients {
    if fermionic {
        Coefficients::Fermionic { a: m.clone() }
    } else {
        let n = m.rows() / 2;
        Coefficients::Bosonic { alpha: m.sub_block(0, 0, n, n), beta: m.sub_block(0, n, n, n) }
    }
}

/// Inverse through the Bogoliubov identities.
pub(crate) fn symplectic_inverse(c: &Coefficients) -> CMatrix {
    match c {
        Coefficients::Bosonic { alpha, beta } => {
            let minus = Complex64::new(-1.0, 0.0);
            CMatrix::block(&alpha.adjoint(), &beta.transpose().scale(minus), &beta.adjoint().scale(minus), &alpha.transpose())
        }
        Coefficients::Fermionic { a } => a.adjoint(),
    }
}

fn free_rotation(phases: &[f64], fermionic: bool) -> CMatrix {
    let mut d: Vec<Complex64> = phases.iter().map(|&p| Complex64::from_polar(1.0, p)).collect();
    if !fermionic {
        d.extend(phases.iter().map(|&p| Complex64::from_polar(1.0, -p)));
    }
    CMatrix::diagonal(&d)
}

struct Composer<'a> {
    config: CavityConfig,
    n: usize,
    ingredients: Method,
    opts: &'a SolverOptions,
    fermionic: bool,
    inertial: Vec<f64>,
    cache: BTreeMap<u64, (BogoliubovSet, CMatrix, CMatrix)>,
}

impl Composer<'_> {
    /// Transformation for one segment run for proper time `tau` (negative runs backwards).
    fn segment(&mut self, acceleration: f64, tau: f64) -> Result<CMatrix> {
        let h = acceleration * self.config.length;
        if h == 0.0 || tau == 0.0 {
            let phases: Vec<f64> = self.inertial.iter().map(|w| w * tau).collect();
            return Ok(free_rotation(&phases, self.fermionic));
        }
        if !self.cache.contains_key(&h.to_bits()) {
            let cfg = self.config.with_h(h)?;
            let set = match self.ingredients {
                Method::PerturbativeLinear => coefficients_perturbative(&cfg, self.n)?,
                Method::Quadrature => coefficients_quadrature(&cfg, self.n, self.opts)?,
            };
            if set.labels.len() != self.n {
                return Err(Error::Truncation { requested: self.n, available: set.labels.len() });
            }
            let fwd = transfer(&set.coefficients);
            let inv = symplectic_inverse(&set.coefficients);
            self.cache.insert(h.to_bits(), (set, fwd, inv));
        }
        let (set, fwd, inv) = &self.cache[&h.to_bits()];
        let eta = h.abs() * tau / self.config.length;
        let phases: Vec<f64> = match self.ingredients {
            Method::PerturbativeLinear => self.inertial.iter().map(|w| w * tau).collect(),
            Method::Quadrature => set.rindler_frequencies.iter().map(|o| o * eta).collect(),
        };
        let rot = free_rotation(&phases, self.fermionic);
        Ok(&(inv * &rot) * fwd)
    }
}

fn run(
    config: &CavityConfig,
    profile: &AccelerationProfile,
    n: usize,
    ingredients: Method,
    opts: &SolverOptions,
    backwards: bool,
) -> Result<EvolutionResult> {
    let base = CavityConfig { h: 0.0, ..*config };
    base.validate()?;
    profile.validate(config.length)?;
    let AccelerationProfile::Segments(segs) = profile else {
        return Err(Error::Profile("composition needs a piecewise-constant profile".into()));
    };
    let data = linear_coefficients(&base, n)?;
    let fermionic = config.bc.is_fermionic();
    let mut composer =
        Composer { config: base, n, ingredients, opts, fermionic, inertial: data.row_frequencies.clone(), cache: BTreeMap::new() };
    let dim = if fermionic { n } else { 2 * n };
    let mut total = CMatrix::identity(dim);
    let order: Vec<&Segment> = if backwards { segs.iter().rev().collect() } else { segs.iter().collect() };
    for s in order {
        let tau = if backwards { -s.duration } else { s.duration };
        let step = composer.segment(s.acceleration, tau)?;
        total = &step * &total;
    }
    let mut out = finish(
        config,
        profile,
        split(&total, fermionic),
        data.row_labels,
        data.row_frequencies,
        EvolutionMethod::SegmentComposition,
        Some(ingredients),
    )?;
    if backwards {
        out.duration = -out.duration;
    }
    Ok(out)
}

/// Composes constant-acceleration segments and inertial coasts.
///
/// Each accelerated segment contributes `B^-1 R B`, with `B` the constant-acceleration
/// transformation and `R` the free rotation by the accelerated-frame frequencies over
/// `eta = |h| tau / L`; inertial stretches contribute the inertial free rotation. Later
/// segments multiply from the left.
pub fn evolve_segments(
    config: &CavityConfig,
    profile: &AccelerationProfile,
    n: usize,
    ingredients: Method,
    opts: &SolverOptions,
) -> Result<EvolutionResult> {
    run(config, profile, n, ingredients, opts, false)
}

/// The transformation that undoes [`evolve_segments`]: segments in reverse order with
/// proper time running backwards.
pub fn evolve_segments_reversed(
    config: &CavityConfig,
    profile: &AccelerationProfile,
    n: usize,
    ingredients: Method,
    opts: &SolverOptions,
) -> Result<EvolutionResult> {
    run(config, profile, n, ingredients, opts, true)
}
