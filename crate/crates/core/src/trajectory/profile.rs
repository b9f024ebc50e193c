use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::numerics::interp::CubicHermite;

/// Constant proper acceleration held for a stretch of proper time at the cavity centre.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Segment {
    /// Proper time (length units).
    pub duration: f64,
    /// Signed proper acceleration (inverse length units).
    pub acceleration: f64,
}

/// Acceleration history of the cavity centre, starting at proper time zero.
#[derive(Clone, Debug, PartialEq)]
pub enum AccelerationProfile {
    Segments(Vec<Segment>),
    /// Samples of a smooth acceleration on a strictly increasing proper-time grid.
    Sampled {
        tau: Vec<f64>,
        acceleration: Vec<f64>,
    },
}

impl AccelerationProfile {
    /// Segments given as `(duration / L, a L)` pairs.
    pub fn from_dimensionless_segments(pairs: &[(f64, f64)], length: f64) -> Self {
        AccelerationProfile::Segments(pairs.iter().map(|&(d, h)| Segment { duration: d * length, acceleration: h / length }).collect())
    }

    /// Samples given as `tau / L` and `a L`.
    pub fn from_dimensionless_samples(tau: &[f64], al: &[f64], length: f64) -> Self {
        AccelerationProfile::Sampled {
            tau: tau.iter().map(|t| t * length).collect(),
            acceleration: al.iter().map(|a| a / length).collect(),
        }
    }

    /// Samples `a(tau)` on `count` equally spaced points of `[t0, t1]`.
    pub fn sample<F: FnMut(f64) -> f64>(mut a: F, t0: f64, t1: f64, count: usize) -> Self {
        let count = count.max(2);
        let tau: Vec<f64> = (0..count).map(|i| t0 + (t1 - t0) * i as f64 / (count - 1) as f64).collect();
        let acceleration = tau.iter().map(|&t| a(t)).collect();
        AccelerationProfile::Sampled { tau, acceleration }
    }

    pub fn is_segmented(&self) -> bool {
        matches!(self, AccelerationProfile::Segments(_))
    }

    /// Proper-time endpoints.
    pub fn span(&self) -> (f64, f64) {
        match self {
            AccelerationProfile::Segments(s) => (0.0, s.iter().map(|s| s.duration).sum()),
            AccelerationProfile::Sampled { tau, .. } => (tau[0], tau[tau.len() - 1]),
        }
    }

    pub fn duration(&self) -> f64 {
        let (a, b) = self.span();
        b - a
    }

    /// Largest `|a| L` over segments or samples, with its sign.
    pub fn peak_h(&self, length: f64) -> f64 {
        let values: Vec<f64> = match self {
            AccelerationProfile::Segments(s) => s.iter().filter(|s| s.duration > 0.0).map(|s| s.acceleration).collect(),
            AccelerationProfile::Sampled { acceleration, .. } => acceleration.clone(),
        };
        values.into_iter().fold(0.0, |m: f64, a| if (a * length).abs() > m.abs() { a * length } else { m })
    }

    /// Total variation of `a L` with the profile extended by zero on both sides.
    pub fn variation(&self, length: f64) -> f64 {
        let values: Vec<f64> = match self {
            AccelerationProfile::Segments(s) => s.iter().filter(|s| s.duration > 0.0).map(|s| s.acceleration).collect(),
            AccelerationProfile::Sampled { acceleration, .. } => acceleration.clone(),
        };
        let mut prev = 0.0;
        let mut total = 0.0;
        for v in values.iter().chain(core::iter::once(&0.0)) {
            total += (v - prev).abs();
            prev = *v;
        }
        total * length
    }

    /// Checks grid monotonicity, finiteness and the rigid-cavity bound `|a| L < 2`.
    pub fn validate(&self, length: f64) -> Result<()> {
        let check_a = |a: f64| {
            if !a.is_finite() {
                Err(Error::Profile(format!("acceleration {a} is not finite")))
            } else if (a * length).abs() >= 2.0 {
                Err(Error::Profile(format!("|a L| = {} violates the rigid-cavity bound |a L| < 2", (a * length).abs())))
            } else {
                Ok(())
            }
        };
        match self {
            AccelerationProfile::Segments(segs) => {
                if segs.is_empty() {
                    return Err(Error::Profile("no segments".into()));
                }
                for s in segs {
                    if !(s.duration >= 0.0) || !s.duration.is_finite() {
                        return Err(Error::Profile(format!("segment duration {} must be finite and nonnegative", s.duration)));
                    }
                    check_a(s.acceleration)?;
                }
            }
            AccelerationProfile::Sampled { tau, acceleration } => {
                if tau.len() != acceleration.len() {
                    return Err(Error::Profile(format!("{} times but {} accelerations", tau.len(), acceleration.len())));
                }
                if tau.len() < 2 {
                    return Err(Error::Profile("a sampled profile needs at least two points".into()));
                }
                if tau.iter().any(|t| !t.is_finite()) {
                    return Err(Error::Profile("non-finite time sample".into()));
                }
                if let Some(w) = tau.windows(2).find(|w| !(w[1] > w[0])) {
                    return Err(Error::Profile(format!("time grid not strictly increasing at {} -> {}", w[0], w[1])));
                }
                for &a in acceleration {
                    check_a(a)?;
                }
            }
        }
        Ok(())
    }

    /// Cubic interpolant of a sampled profile.
    pub(crate) fn interpolant(&self) -> Result<CubicHermite> {
        match self {
            AccelerationProfile::Sampled { tau, acceleration } => CubicHermite::new(tau, acceleration),
            _ => Err(Error::Profile("segments have no smooth interpolant".into())),
        }
    }
}
