use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::{bessel_route, minkowski, CavityConfig, Family, FieldValue, MinkowskiMode, RindlerBackend, SolverOptions};
use crate::error::{Error, Result};
use crate::numerics::ode::{integrate_final, integrate_final_dyn, integrate_panels, Checkpoints};
use crate::numerics::quad::{integrate, integrate_vec_split, QuadOptions};
use crate::numerics::roots::{brent_with_values, expand_bracket};

/// Signed-coordinate layout of an accelerated cavity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Geometry {
    pub d: f64,
    pub za: f64,
    pub zb: f64,
    pub chi0: f64,
    pub chi1: f64,
    pub length: f64,
}

impl Geometry {
    pub fn new(config: &CavityConfig) -> Self {
        let d = config.h.signum();
        let (chi0, chi1) = (config.chi0(), config.chi1());
        let (za, zb) = if d > 0.0 { (chi0, chi1) } else { (-chi1, -chi0) };
        Self { d, za, zb, chi0, chi1, length: config.length }
    }

    pub fn sa(&self) -> f64 {
        self.za.abs().ln()
    }

    pub fn sb(&self) -> f64 {
        self.zb.abs().ln()
    }

    pub fn span(&self) -> f64 {
        (self.chi1 / self.chi0).ln()
    }
}

fn panel_count(rate: f64, span: f64) -> usize {
    ((rate * span).ceil() as usize + 4).min(400_000)
}

// The ODEs below use s = ln|z| as the independent variable, so dz/ds = z = d * chi.

// State (f, chi df/dz, running norm integral).
fn scalar_rhs(omega: f64, mu: f64, d: f64) -> impl FnMut(f64, &[f64; 3]) -> [f64; 3] {
    let o2 = omega * omega;
    move |s, y| {
        let chi = s.exp();
        let w = o2 - mu * mu * chi * chi;
        [d * y[1], -d * w * y[0], d * 2.0 * omega * y[0] * y[0]]
    }
}

// State (Re p, Im p, Re q, Im q, running norm integral) with (a, b) = (p, q) / sqrt(chi).
fn spinor_rhs(omega: f64, mu: f64, d: f64) -> impl FnMut(f64, &[f64; 5]) -> [f64; 5] {
    move |s, y| {
        let m = mu * s.exp();
        [
            d * (-omega * y[1] + m * y[3]),
            d * (omega * y[0] - m * y[2]),
            d * (omega * y[3] - m * y[1]),
            d * (-omega * y[2] + m * y[0]),
            d * (y[0] * y[0] + y[1] * y[1] + y[2] * y[2] + y[3] * y[3]),
        ]
    }
}

/// Prüfer angle at the far wall for a scalar mode of frequency `omega`.
fn scalar_phase_end(g: &Geometry, family: Family, mu: f64, omega: f64) -> f64 {
    let d = g.d;
    let rate = omega + mu * mu * g.chi1 * g.chi1 / omega;
    let start = if family == Family::Dirichlet { 0.0 } else { 0.5 * PI };
    let mut f = |s: f64, y: &[f64; 1]| {
        let chi = s.exp();
        let sn = y[0].sin();
        [d * (omega - mu * mu * chi * chi / omega * sn * sn)]
    };
    integrate_final(&mut f, g.sa(), g.sb(), [start], panel_count(rate, g.span())).0[0]
}

/// Phase of `b / a` at the far wall for a Dirac mode of frequency `omega`.
fn spinor_phase_end(g: &Geometry, mu: f64, omega: f64) -> f64 {
    let d = g.d;
    let rate = 2.0 * omega.abs() + 2.0 * mu * g.chi1;
    let mut f = |s: f64, y: &[f64; 1]| [d * (-2.0 * omega + 2.0 * mu * s.exp() * y[0].cos())];
    integrate_final(&mut f, g.sa(), g.sb(), [0.5 * PI], panel_count(rate, g.span())).0[0]
}

fn solve_eigenfrequency(g: &Geometry, family: Family, mu: f64, label: i64, estimate: f64, tol: f64) -> Result<f64> {
    let (target, floor, sign) = match family {
        Family::Dirichlet => (label as f64 * PI, 1e-9 * estimate, 1.0),
        Family::Neumann => (0.5 * PI + label as f64 * PI, 1e-9 * estimate, 1.0),
        Family::Dirac => (-0.5 * PI - 2.0 * PI * label as f64, f64::NEG_INFINITY, -1.0),
    };
    // sign makes the residual increasing in omega
    let mut residual = |omega: f64| -> Result<f64> {
        let end = match family {
            Family::Dirac => spinor_phase_end(g, mu, omega),
            _ => scalar_phase_end(g, family, mu, omega),
        };
        Ok(sign * (end - target))
    };
    let hw = 0.05 * estimate.abs() + 0.5;
    let (lo, flo, hi, fhi) = expand_bracket(&mut residual, estimate, hw, floor, 60)?;
    let xtol = (tol * 1e-2).max(4.0 * f64::EPSILON) * estimate.abs().max(1.0);
    brent_with_values(&mut residual, lo, flo, hi, fhi, xtol, 200)
}

#[derive(Clone, Debug)]
enum Radial {
    ScalarOde(Checkpoints<3>),
    SpinorOde(Checkpoints<5>),
    ScalarBessel { wall: Complex64, tol: f64 },
    SpinorBessel { p_minus: Complex64, tol: f64 },
}

/// An accelerated-frame cavity mode with its spatial profile.
#[derive(Clone, Debug)]
pub struct RindlerMode {
    pub label: i64,
    /// Dimensionless Rindler frequency.
    pub omega: f64,
    family: Family,
    geom: Geometry,
    mu: f64,
    radial: Radial,
    scale: Complex64,
}

impl RindlerMode {
    pub fn family(&self) -> Family {
        self.family
    }

    /// Modulus of the factor applied to the raw backend solution.
    pub fn scale(&self) -> f64 {
        self.scale.norm()
    }

    /// Signed coordinate range `(z_a, z_b)`.
    pub fn walls(&self) -> (f64, f64) {
        (self.geom.za, self.geom.zb)
    }

    fn scalar_raw(&self, z: f64) -> Result<f64> {
        match &self.radial {
            Radial::ScalarOde(cp) => {
                let mut f = scalar_rhs(self.omega, self.mu, self.geom.d);
                Ok(cp.evaluate(&mut f, z.abs().ln())[0])
            }
            Radial::ScalarBessel { wall, tol } => bessel_route::scalar_raw(*wall, self.omega, self.mu * z.abs(), *tol),
            _ => Err(Error::Unsupported("scalar evaluation of a spinor mode".into())),
        }
    }

    fn spinor_raw(&self, z: f64) -> Result<[Complex64; 2]> {
        match &self.radial {
            Radial::SpinorOde(cp) => {
                let mut f = spinor_rhs(self.omega, self.mu, self.geom.d);
                let y = cp.evaluate(&mut f, z.abs().ln());
                let r = 1.0 / z.abs().sqrt();
                Ok([Complex64::new(y[0], y[1]) * r, Complex64::new(y[2], y[3]) * r])
            }
            Radial::SpinorBessel { p_minus, tol } => {
                let [a, b] = bessel_route::spinor_raw(*p_minus, self.omega, self.mu * z.abs(), *tol)?;
                // the left-pointing cavity is the mirror image with the spinor components swapped
                Ok(if self.geom.d > 0.0 { [a, b] } else { [b, a] })
            }
            _ => Err(Error::Unsupported("spinor evaluation of a scalar mode".into())),
        }
    }

    /// Normalised real scalar profile at signed coordinate `z`.
    pub fn scalar_value(&self, z: f64) -> Result<f64> {
        Ok(self.scale.re * self.scalar_raw(z)?)
    }

    /// Normalised spinor (along `U+`, `U-`) at signed coordinate `z`.
    pub fn spinor_value(&self, z: f64) -> Result<[Complex64; 2]> {
        let [a, b] = self.spinor_raw(z)?;
        Ok([a * self.scale, b * self.scale])
    }

    pub fn spatial(&self, z: f64) -> Result<FieldValue> {
        match self.family {
            Family::Dirac => Ok(FieldValue::Spinor(self.spinor_value(z)?)),
            _ => Ok(FieldValue::Scalar(Complex64::new(self.scalar_value(z)?, 0.0))),
        }
    }

    /// Fixes `scale` of a Bessel-route mode from the norm integral and the wall phase convention.
    fn normalise(&mut self, tol: f64) -> Result<()> {
        let (za, zb) = (self.geom.za, self.geom.zb);
        let opts = QuadOptions { abs_tol: 0.0, rel_tol: tol.min(1e-10) * 1e-1, ..QuadOptions::default() };
        let mut failure = None;
        let norm = match self.family {
            Family::Dirac => integrate(
                |z| match self.spinor_raw(z) {
                    Ok([a, b]) => a.norm_sqr() + b.norm_sqr(),
                    Err(e) => {
                        failure.get_or_insert(e);
                        0.0
                    }
                },
                za,
                zb,
                &opts,
            )?,
            _ => integrate(
                |z| match self.scalar_raw(z) {
                    Ok(f) => 2.0 * self.omega * f * f / z.abs(),
                    Err(e) => {
                        failure.get_or_insert(e);
                        0.0
                    }
                },
                za,
                zb,
                &opts,
            )?,
        };
        if let Some(e) = failure {
            return Err(e);
        }
        if !(norm.value > 0.0) {
            return Err(Error::Singular(format!("mode {} has vanishing norm", self.label)));
        }
        let inv = 1.0 / norm.value.sqrt();
        let phase = match (&self.radial, self.family) {
            (Radial::ScalarBessel { wall, tol }, Family::Dirichlet) => {
                let slope = bessel_route::scalar_raw_slope(*wall, self.omega, self.mu, za.abs(), *tol)? * self.geom.d;
                Complex64::new(slope.signum(), 0.0)
            }
            (Radial::ScalarBessel { .. }, _) => Complex64::new(self.scalar_raw(za)?.signum(), 0.0),
            (Radial::SpinorBessel { .. }, _) => {
                let a = self.spinor_raw(za)?[0];
                a.conj() / a.norm()
            }
            _ => Complex64::new(1.0, 0.0),
        };
        self.scale = phase * inv;
        Ok(())
    }
}

impl RindlerMode {
    fn overlap_panels(&self, inertial: &[MinkowskiMode]) -> usize {
        let kmax = inertial.iter().fold(0.0f64, |m, w| m.max(w.k.abs()));
        let g = &self.geom;
        let rate = 2.0 * self.omega.abs() + 2.0 * self.mu * g.chi1 + kmax * g.chi1;
        panel_count(rate, g.span())
    }

    fn overlap_breaks(&self, inertial: &[MinkowskiMode]) -> Vec<f64> {
        let (za, zb) = (self.geom.za, self.geom.zb);
        let pieces = inertial.len().max(8);
        (0..=pieces).map(|i| za + (zb - za) * i as f64 / pieces as f64).collect()
    }

    /// Inner products with inertial scalar modes on the `t = 0` slice:
    /// `int f s_j (Omega / chi + omega_j) dz` and `int f s_j (omega_j - Omega / chi) dz`.
    pub(crate) fn scalar_overlaps(&self, inertial: &[MinkowskiMode], tol: f64) -> Result<(Vec<f64>, Vec<f64>)> {
        let n = inertial.len();
        let (za, d, omega) = (self.geom.za, self.geom.d, self.omega);
        let raw = match &self.radial {
            Radial::ScalarOde(cp) => {
                let mu2 = self.mu * self.mu;
                let mut f = |s: f64, y: &[f64], dy: &mut [f64]| {
                    let chi = s.exp();
                    let z = d * chi;
                    dy[0] = d * y[1];
                    dy[1] = -d * (omega * omega - mu2 * chi * chi) * y[0];
                    for (j, m) in inertial.iter().enumerate() {
                        let p = y[0] * m.scalar(z - za);
                        dy[2 + j] = p * (d * omega + z * m.omega);
                        dy[2 + n + j] = p * (z * m.omega - d * omega);
                    }
                };
                let mut y0 = alloc::vec![0.0; 2 + 2 * n];
                y0[..2].copy_from_slice(&cp.states[0][..2]);
                let (y, _) = integrate_final_dyn(&mut f, self.geom.sa(), self.geom.sb(), &y0, self.overlap_panels(inertial));
                y[2..].to_vec()
            }
            Radial::ScalarBessel { .. } => {
                let mut failure = None;
                let mut f = |z: f64, out: &mut [f64]| {
                    let fr = match self.scalar_raw(z) {
                        Ok(v) => v,
                        Err(e) => {
                            failure.get_or_insert(e);
                            0.0
                        }
                    };
                    let w = omega / z.abs();
                    for (j, m) in inertial.iter().enumerate() {
                        let p = fr * m.scalar(z - za);
                        out[j] = p * (w + m.omega);
                        out[n + j] = p * (m.omega - w);
                    }
                };
                let q = QuadOptions { abs_tol: 0.1 * tol / self.scale.norm(), rel_tol: 0.0, max_intervals: 20_000 };
                let r = integrate_vec_split(&mut f, &self.overlap_breaks(inertial), 2 * n, &q)?;
                if let Some(e) = failure {
                    return Err(e);
                }
                r.value
            }
            _ => return Err(Error::Unsupported("scalar overlaps of a spinor mode".into())),
        };
        let s = self.scale.re;
        Ok((raw[..n].iter().map(|v| v * s).collect(), raw[n..].iter().map(|v| v * s).collect()))
    }

    /// Inner products `int psi_l^dagger u dz` with inertial spinor modes on the `t = 0` slice.
    pub(crate) fn spinor_overlaps(&self, inertial: &[MinkowskiMode], tol: f64) -> Result<Vec<Complex64>> {
        let n = inertial.len();
        let (za, d) = (self.geom.za, self.geom.d);
        let raw: Vec<Complex64> = match &self.radial {
            Radial::SpinorOde(cp) => {
                let mut rhs = spinor_rhs(self.omega, self.mu, d);
                let mut f = |s: f64, y: &[f64], dy: &mut [f64]| {
                    let core = rhs(s, &[y[0], y[1], y[2], y[3], 0.0]);
                    dy[..4].copy_from_slice(&core[..4]);
                    let chi = s.exp();
                    let z = d * chi;
                    let w = d * chi.sqrt();
                    let (p, q) = (Complex64::new(y[0], y[1]), Complex64::new(y[2], y[3]));
                    for (j, m) in inertial.iter().enumerate() {
                        let psi = m.spinor(z - za);
                        let v = (psi[0].conj() * p + psi[1].conj() * q) * w;
                        dy[4 + 2 * j] = v.re;
                        dy[5 + 2 * j] = v.im;
                    }
                };
                let mut y0 = alloc::vec![0.0; 4 + 2 * n];
                y0[..4].copy_from_slice(&cp.states[0][..4]);
                let (y, _) = integrate_final_dyn(&mut f, self.geom.sa(), self.geom.sb(), &y0, self.overlap_panels(inertial));
                (0..n).map(|j| Complex64::new(y[4 + 2 * j], y[5 + 2 * j])).collect()
            }
            Radial::SpinorBessel { .. } => {
                let mut failure = None;
                let mut f = |z: f64, out: &mut [f64]| {
                    let u = match self.spinor_raw(z) {
                        Ok(u) => u,
                        Err(e) => {
                            failure.get_or_insert(e);
                            [Complex64::new(0.0, 0.0); 2]
                        }
                    };
                    for (j, m) in inertial.iter().enumerate() {
                        let psi = m.spinor(z - za);
                        let v = psi[0].conj() * u[0] + psi[1].conj() * u[1];
                        out[2 * j] = v.re;
                        out[2 * j + 1] = v.im;
                    }
                };
                let q = QuadOptions { abs_tol: 0.1 * tol / self.scale.norm(), rel_tol: 0.0, max_intervals: 20_000 };
                let r = integrate_vec_split(&mut f, &self.overlap_breaks(inertial), 2 * n, &q)?;
                if let Some(e) = failure {
                    return Err(e);
                }
                (0..n).map(|j| Complex64::new(r.value[2 * j], r.value[2 * j + 1])).collect()
            }
            _ => return Err(Error::Unsupported("spinor overlaps of a scalar mode".into())),
        };
        Ok(raw.into_iter().map(|v| v * self.scale).collect())
    }
}

fn estimates(config: &CavityConfig, labels: &[i64]) -> Result<Vec<f64>> {
    let inertial = minkowski::modes(config, labels)?;
    Ok(inertial.iter().map(|m| m.omega * config.length / config.h.abs()).collect())
}

fn ode_modes(config: &CavityConfig, labels: &[i64], opts: &SolverOptions) -> Result<Vec<RindlerMode>> {
    let g = Geometry::new(config);
    let family = config.family();
    let mu = config.mass;
    let est = estimates(config, labels)?;
    let mut out = Vec::with_capacity(labels.len());
    for (&label, &e) in labels.iter().zip(&est) {
        let omega = solve_eigenfrequency(&g, family, mu, label, e, opts.tol)?;
        let radial = match family {
            Family::Dirac => {
                let rate = 2.0 * omega.abs() + 2.0 * mu * g.chi1;
                let r0 = g.za.abs().sqrt();
                let mut f = spinor_rhs(omega, mu, g.d);
                Radial::SpinorOde(integrate_panels(&mut f, g.sa(), g.sb(), [r0, 0.0, 0.0, r0, 0.0], panel_count(rate, g.span())))
            }
            _ => {
                let rate = omega.max(mu * g.chi1);
                let y0 = if family == Family::Dirichlet { [0.0, 1.0, 0.0] } else { [1.0, 0.0, 0.0] };
                let mut f = scalar_rhs(omega, mu, g.d);
                Radial::ScalarOde(integrate_panels(&mut f, g.sa(), g.sb(), y0, panel_count(rate, g.span())))
            }
        };
        let norm = match &radial {
            Radial::ScalarOde(cp) => cp.end_state()[2],
            Radial::SpinorOde(cp) => cp.end_state()[4],
            _ => unreachable!(),
        };
        if !(norm > 0.0) {
            return Err(Error::Singular(format!("mode {label} has vanishing norm")));
        }
        let scale = Complex64::new(1.0 / norm.sqrt(), 0.0);
        out.push(RindlerMode { label, omega, family, geom: g, mu, radial, scale });
    }
    Ok(out)
}

fn bessel_modes(config: &CavityConfig, labels: &[i64], opts: &SolverOptions) -> Result<Vec<RindlerMode>> {
    let g = Geometry::new(config);
    let family = config.family();
    let mu = config.mass;
    let roots = bessel_route::eigenfrequencies(config, labels, opts.tol)?;
    let mut out = Vec::with_capacity(labels.len());
    for (&label, &omega) in labels.iter().zip(&roots) {
        let radial = match family {
            Family::Dirac => Radial::SpinorBessel { p_minus: bessel_route::spinor_wall(omega, mu * g.chi0, opts.tol)?, tol: opts.tol },
            _ => Radial::ScalarBessel { wall: bessel_route::scalar_wall(family, omega, mu * g.chi0, opts.tol)?, tol: opts.tol },
        };
        let mut m = RindlerMode { label, omega, family, geom: g, mu, radial, scale: Complex64::new(1.0, 0.0) };
        m.normalise(opts.tol)?;
        out.push(m);
    }
    Ok(out)
}

fn check_separation(modes: &[RindlerMode]) -> Result<()> {
    let mut freqs: Vec<(f64, usize)> = modes.iter().enumerate().map(|(i, m)| (m.omega, i)).collect();
    freqs.sort_by(|a, b| a.0.total_cmp(&b.0));
    for w in freqs.windows(2) {
        let spacing = w[1].0 - w[0].0;
        if spacing < 1e-9 * w[1].0.abs().max(1.0) {
            return Err(Error::NearDegenerate { index: w[1].1, spacing });
        }
    }
    Ok(())
}

pub(crate) fn modes(config: &CavityConfig, labels: &[i64], opts: &SolverOptions) -> Result<(Vec<RindlerMode>, RindlerBackend)> {
    let (modes, backend) = match opts.backend {
        RindlerBackend::Ode => (ode_modes(config, labels, opts)?, RindlerBackend::Ode),
        RindlerBackend::Bessel => (bessel_modes(config, labels, opts)?, RindlerBackend::Bessel),
        RindlerBackend::Auto => {
            let attempt =
                if bessel_route::in_range(config, &estimates(config, labels)?) { bessel_modes(config, labels, opts).ok() } else { None };
            match attempt {
                Some(m) => (m, RindlerBackend::Bessel),
                None => (ode_modes(config, labels, opts)?, RindlerBackend::Ode),
            }
        }
    };
    check_separation(&modes)?;
    Ok((modes, backend))
}

pub(crate) fn root_count(config: &CavityConfig, omega_max: f64) -> Result<usize> {
    if config.h == 0.0 || !(omega_max > 0.0) {
        return Err(Error::Domain("root counting needs h != 0 and a positive frequency".into()));
    }
    let g = Geometry::new(config);
    let mu = config.mass;
    Ok(match config.family() {
        Family::Dirichlet => (scalar_phase_end(&g, Family::Dirichlet, mu, omega_max) / PI).floor().max(0.0) as usize,
        Family::Neumann => {
            let psi = scalar_phase_end(&g, Family::Neumann, mu, omega_max);
            if psi < 0.5 * PI {
                0
            } else {
                ((psi - 0.5 * PI) / PI).floor() as usize + 1
            }
        }
        Family::Dirac => {
            let theta = spinor_phase_end(&g, mu, omega_max);
            ((-0.5 * PI - theta) / (2.0 * PI)).ceil().max(0.0) as usize
        }
    })
}
