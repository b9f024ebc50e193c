//! Cavity configuration, inertial and accelerated mode spectra, and mode evaluation.
//!
//! Positions inside the accelerated cavity use a signed coordinate `z` with `|z| = chi`
//! (the Rindler radial coordinate): `z` runs over `[chi0, chi1]` when the acceleration
//! points to the right and over `[-chi1, -chi0]` when it points to the left. In both
//! cases the inertial mode phase reference sits at the smaller end `z_a` of the range.

mod bessel_route;
mod minkowski;
mod rindler;

use alloc::format;
use alloc::vec::Vec;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

pub use bessel_route::eigencondition as bessel_eigencondition;
pub use minkowski::{dirac_root, MinkowskiMode};
pub use rindler::RindlerMode;

/// Smallest dimensionless mass accepted where a strictly positive mass is required.
pub const MIN_MASS: f64 = 1e-6;

/// Field species and wall condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundaryCondition {
    Dirichlet,
    Neumann,
    DiracMit,
    MaxwellPolI,
    MaxwellPolII,
}

/// The one-dimensional problem a boundary condition reduces to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Dirichlet,
    Neumann,
    Dirac,
}

impl BoundaryCondition {
    pub fn family(self) -> Family {
        match self {
            BoundaryCondition::Dirichlet | BoundaryCondition::MaxwellPolI => Family::Dirichlet,
            BoundaryCondition::Neumann | BoundaryCondition::MaxwellPolII => Family::Neumann,
            BoundaryCondition::DiracMit => Family::Dirac,
        }
    }

    pub fn is_fermionic(self) -> bool {
        self == BoundaryCondition::DiracMit
    }

    /// Sign applied to the beta block relative to the scalar family.
    pub fn beta_sign(self) -> f64 {
        if self == BoundaryCondition::MaxwellPolII {
            -1.0
        } else {
            1.0
        }
    }
}

impl Family {
    /// Mode labels for a truncation of size `n`.
    ///
    /// Dirichlet: `1..=n`; Neumann: `0..n`; Dirac: `-n/2 .. n/2` (n must be even).
    pub fn truncation_labels(self, n: usize) -> Result<Vec<i64>> {
        if n == 0 {
            return Err(Error::Domain("truncation must be at least 1".into()));
        }
        Ok(match self {
            Family::Dirichlet => (1..=n as i64).collect(),
            Family::Neumann => (0..n as i64).collect(),
            Family::Dirac => {
                if !n.is_multiple_of(2) {
                    return Err(Error::Domain(format!("fermionic truncation must be even, got {n}")));
                }
                let half = (n / 2) as i64;
                (-half..half).collect()
            }
        })
    }

    /// Labels of the first `count` modes of a spectrum (for Dirac: `count` of each sign).
    pub fn spectrum_labels(self, count: usize) -> Result<Vec<i64>> {
        match self {
            Family::Dirac => self.truncation_labels(2 * count),
            _ => self.truncation_labels(count),
        }
    }
}

/// Polarisation of a rectangular-waveguide electromagnetic sector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Polarisation {
    I,
    II,
}

/// Transverse data of an electromagnetic sector reduced to a massive scalar.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MaxwellSector {
    pub lx: f64,
    pub ly: f64,
    pub m: u32,
    pub n: u32,
    pub pol: Polarisation,
}

impl MaxwellSector {
    pub fn transverse_wavenumber(&self) -> f64 {
        let a = core::f64::consts::PI * self.m as f64 / self.lx;
        let b = core::f64::consts::PI * self.n as f64 / self.ly;
        (a * a + b * b).sqrt()
    }
}

/// A cavity of proper length `length`, field mass `mass` and dimensionless centre
/// acceleration `h` (positive: towards increasing z).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CavityConfig {
    pub length: f64,
    pub mass: f64,
    pub h: f64,
    pub bc: BoundaryCondition,
    pub maxwell: Option<MaxwellSector>,
}

impl CavityConfig {
    pub fn new(bc: BoundaryCondition, length: f64, mass: f64, h: f64) -> Result<Self> {
        let c = Self { length, mass, h, bc, maxwell: None };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.length > 0.0) || !self.length.is_finite() {
            return Err(Error::Domain(format!("cavity length must be positive, got {}", self.length)));
        }
        if !(self.mass >= 0.0) || !self.mass.is_finite() {
            return Err(Error::Domain(format!("mass must be non-negative, got {}", self.mass)));
        }
        if !self.h.is_finite() || self.h.abs() >= 2.0 {
            return Err(Error::Domain(format!("|h| must be below 2 for a rigid cavity, got {}", self.h)));
        }
        if self.bc.family() != Family::Dirichlet && self.mass * self.length < MIN_MASS {
            return Err(Error::Domain(format!(
                "{:?} needs a strictly positive mass (mass * length >= {MIN_MASS}), got {}",
                self.bc,
                self.mass * self.length
            )));
        }
        Ok(())
    }

    /// Same cavity with a different acceleration.
    pub fn with_h(&self, h: f64) -> Result<Self> {
        let c = Self { h, ..*self };
        c.validate()?;
        Ok(c)
    }

    pub fn dimensionless_mass(&self) -> f64 {
        self.mass * self.length
    }

    pub fn family(&self) -> Family {
        self.bc.family()
    }

    /// Rindler radius of the near wall, `(1/|h| - 1/2) L`.
    pub fn chi0(&self) -> f64 {
        self.length * (1.0 / self.h.abs() - 0.5)
    }

    /// Rindler radius of the far wall, `(1/|h| + 1/2) L`.
    pub fn chi1(&self) -> f64 {
        self.length * (1.0 / self.h.abs() + 0.5)
    }
}

/// Reduces the `(m, n)` sector of an electromagnetic field in an `lx x ly x lz` box to a
/// massive scalar along z. The returned configuration is inertial; use
/// [`CavityConfig::with_h`] to accelerate it.
pub fn maxwell_reduction(lx: f64, ly: f64, lz: f64, m: u32, n: u32, pol: Polarisation) -> Result<CavityConfig> {
    if !(lx > 0.0 && ly > 0.0 && lz > 0.0) {
        return Err(Error::Domain("box dimensions must be positive".into()));
    }
    let valid = match pol {
        Polarisation::I => (m, n) != (0, 0),
        Polarisation::II => m >= 1 && n >= 1,
    };
    if !valid {
        return Err(Error::Domain(format!("transverse indices ({m}, {n}) are not allowed for polarisation {pol:?}")));
    }
    let sector = MaxwellSector { lx, ly, m, n, pol };
    let bc = match pol {
        Polarisation::I => BoundaryCondition::MaxwellPolI,
        Polarisation::II => BoundaryCondition::MaxwellPolII,
    };
    let c = CavityConfig { length: lz, mass: sector.transverse_wavenumber(), h: 0.0, bc, maxwell: Some(sector) };
    c.validate()?;
    Ok(c)
}

/// Which frame's modes to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Frame {
    Minkowski,
    Rindler,
}

/// Numerical route for accelerated-frame modes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RindlerBackend {
    /// Bessel cross products when in range and accurate, the ODE route otherwise.
    Auto,
    /// Prüfer-angle shooting plus extrapolated ODE integration.
    Ode,
    /// Modified Bessel functions of imaginary order.
    Bessel,
}

/// Solver settings shared by the accelerated-frame routines.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverOptions {
    pub tol: f64,
    pub backend: RindlerBackend,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self { tol: crate::specfun::DEFAULT_TOL, backend: RindlerBackend::Auto }
    }
}

/// Phase fixing rule of a mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PhaseConvention {
    /// `df/dz > 0` at the reference wall.
    SlopePositive,
    /// `f > 0` at the reference wall.
    ValuePositive,
    /// Upper spinor component real and positive at the reference wall.
    UpperComponentPositive,
}

impl PhaseConvention {
    pub fn for_family(f: Family) -> Self {
        match f {
            Family::Dirichlet => PhaseConvention::SlopePositive,
            Family::Neumann => PhaseConvention::ValuePositive,
            Family::Dirac => PhaseConvention::UpperComponentPositive,
        }
    }
}

/// One entry of a spectrum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModeEntry {
    pub label: i64,
    /// `omega` (inverse length) for inertial modes, dimensionless `Omega` for accelerated ones.
    pub frequency: f64,
    /// Inertial modes: the analytic normalisation constant. Accelerated modes: the factor
    /// applied to the raw backend solution.
    pub normalization: f64,
    pub phase: PhaseConvention,
}

/// Modes of one frame.
#[derive(Clone, Debug)]
pub enum ModeSet {
    Minkowski(Vec<MinkowskiMode>),
    Rindler(Vec<RindlerMode>),
}

/// Ordered list of modes (ascending label) for one frame.
#[derive(Clone, Debug)]
pub struct ModeSpectrum {
    pub frame: Frame,
    pub config: CavityConfig,
    pub entries: Vec<ModeEntry>,
    /// Backend that produced accelerated modes.
    pub backend: Option<RindlerBackend>,
    pub modes: ModeSet,
}

/// Value of a mode at a spacetime point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FieldValue {
    Scalar(Complex64),
    /// Components along `U+` and `U-`.
    Spinor([Complex64; 2]),
}

/// Builds the first `count` modes of `frame` (for Dirac, `count` of each frequency sign).
pub fn spectrum(config: &CavityConfig, frame: Frame, count: usize, opts: &SolverOptions) -> Result<ModeSpectrum> {
    config.validate()?;
    let labels = config.family().spectrum_labels(count)?;
    spectrum_for_labels(config, frame, &labels, opts)
}

/// Builds the modes with the given labels.
pub fn spectrum_for_labels(config: &CavityConfig, frame: Frame, labels: &[i64], opts: &SolverOptions) -> Result<ModeSpectrum> {
    config.validate()?;
    let phase = PhaseConvention::for_family(config.family());
    match frame {
        Frame::Minkowski => {
            let modes = minkowski::modes(config, labels)?;
            let entries = modes.iter().map(|m| ModeEntry { label: m.label, frequency: m.omega, normalization: m.norm, phase }).collect();
            Ok(ModeSpectrum { frame, config: *config, entries, backend: None, modes: ModeSet::Minkowski(modes) })
        }
        Frame::Rindler => {
            if config.h == 0.0 {
                return Err(Error::Domain("accelerated modes need h != 0".into()));
            }
            let (modes, backend) = rindler::modes(config, labels, opts)?;
            let entries = modes.iter().map(|m| ModeEntry { label: m.label, frequency: m.omega, normalization: m.scale(), phase }).collect();
            Ok(ModeSpectrum { frame, config: *config, entries, backend: Some(backend), modes: ModeSet::Rindler(modes) })
        }
    }
}

/// Counts accelerated-frame scalar eigenfrequencies (or non-negative Dirac ones) below `omega_max`.
pub fn rindler_root_count(config: &CavityConfig, omega_max: f64) -> Result<usize> {
    config.validate()?;
    rindler::root_count(config, omega_max)
}

impl ModeSpectrum {
    fn index_of(&self, label: i64) -> Result<usize> {
        self.entries
            .iter()
            .position(|e| e.label == label)
            .ok_or_else(|| Error::Domain(format!("mode label {label} is not in this spectrum")))
    }

    /// Spatial coordinate range `(z_a, z_b)` of the cavity in this frame.
    pub fn wall_positions(&self) -> (f64, f64) {
        match self.frame {
            Frame::Minkowski => (0.0, self.config.length),
            Frame::Rindler => {
                let g = rindler::Geometry::new(&self.config);
                (g.za, g.zb)
            }
        }
    }

    /// Evaluates the mode with `label` at time `t` and position `x`.
    ///
    /// Inertial frame: `t` is coordinate time, `x` in `[0, L]`. Accelerated frame: `t` is the
    /// dimensionless Rindler time `eta`, `x` the signed coordinate `z`.
    pub fn evaluate(&self, label: i64, t: f64, x: f64) -> Result<FieldValue> {
        let idx = self.index_of(label)?;
        let (a, b) = self.wall_positions();
        let slack = 1e-12 * self.config.length;
        if !(x >= a - slack && x <= b + slack) {
            return Err(Error::Domain(format!("position {x} outside cavity [{a}, {b}]")));
        }
        let x = x.clamp(a, b);
        match &self.modes {
            ModeSet::Minkowski(ms) => {
                let m = &ms[idx];
                let ph = Complex64::from_polar(1.0, -m.omega * t);
                Ok(match m.spatial(x) {
                    FieldValue::Scalar(v) => FieldValue::Scalar(v * ph),
                    FieldValue::Spinor([u, v]) => FieldValue::Spinor([u * ph, v * ph]),
                })
            }
            ModeSet::Rindler(ms) => {
                let m = &ms[idx];
                let ph = Complex64::from_polar(1.0, -m.omega * t);
                Ok(match m.spatial(x)? {
                    FieldValue::Scalar(v) => FieldValue::Scalar(v * ph),
                    FieldValue::Spinor([u, v]) => FieldValue::Spinor([u * ph, v * ph]),
                })
            }
        }
    }
}

/// Convenience wrapper for [`ModeSpectrum::evaluate`].
pub fn evaluate_mode(spectrum: &ModeSpectrum, label: i64, t: f64, x: f64) -> Result<FieldValue> {
    spectrum.evaluate(label, t, x)
}
