use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::profile::AccelerationProfile;
use super::{finish, EvolutionMethod, EvolutionResult};
use crate::bogoliubov::{linear_coefficients, Coefficients, LinearCoefficients};
use crate::error::Result;
use crate::modes::{CavityConfig, SolverOptions};
use crate::numerics::quad::{integrate_vec_split, QuadOptions};
use crate::numerics::CMatrix;

/// `i L w int e^{-i w (tau - tau_0)} a(tau) dtau` over the profile for each frequency `w`.
///
/// Segments use the exact per-segment antiderivative; samples are integrated on their
/// cubic interpolant knot interval by knot interval.
pub fn drive_transform(profile: &AccelerationProfile, frequencies: &[f64], length: f64, tol: f64) -> Result<Vec<Complex64>> {
    profile.validate(length)?;
    match profile {
        AccelerationProfile::Segments(segs) => Ok(frequencies
            .iter()
            .map(|&w| {
                let mut t = 0.0;
                let mut acc = Complex64::new(0.0, 0.0);
                for s in segs {
                    let t1 = t + s.duration;
                    if s.acceleration != 0.0 {
                        acc += (Complex64::from_polar(1.0, -w * t) - Complex64::from_polar(1.0, -w * t1)) * (s.acceleration * length);
                    }
                    t = t1;
                }
                acc
            })
            .collect()),
        AccelerationProfile::Sampled { tau, acceleration } => {
            let interp = profile.interpolant()?;
            let t0 = tau[0];
            let scale =
                tau.windows(2).zip(acceleration.windows(2)).map(|(t, a)| 0.5 * (t[1] - t[0]) * (a[0].abs() + a[1].abs())).sum::<f64>();
            if scale == 0.0 {
                return Ok(vec![Complex64::new(0.0, 0.0); frequencies.len()]);
            }
            let n = frequencies.len();
            let mut f = |t: f64, out: &mut [f64]| {
                let a = interp.eval(t);
                for (j, &w) in frequencies.iter().enumerate() {
                    let (s, c) = (w * (t - t0)).sin_cos();
                    out[2 * j] = a * c;
                    out[2 * j + 1] = -a * s;
                }
            };
            let opts = QuadOptions { abs_tol: 0.1 * tol * scale, rel_tol: 0.0, max_intervals: 20 * tau.len() + 4000 };
            let r = integrate_vec_split(&mut f, tau, 2 * n, &opts)?;
            Ok((0..n).map(|j| Complex64::new(0.0, length * frequencies[j]) * Complex64::new(r.value[2 * j], r.value[2 * j + 1])).collect())
        }
    }
}

/// Linear-order Bogoliubov matrices of a general acceleration history from the Fourier
/// transform of the acceleration.
pub fn evolve_fourier(config: &CavityConfig, profile: &AccelerationProfile, n: usize, opts: &SolverOptions) -> Result<EvolutionResult> {
    let base = CavityConfig { h: 0.0, ..*config };
    base.validate()?;
    profile.validate(config.length)?;
    let data = linear_coefficients(&base, n)?;
    let w = &data.row_frequencies;
    let total = profile.duration();
    let phase: Vec<Complex64> = w.iter().map(|&x| Complex64::from_polar(1.0, x * total)).collect();
    // distinct differences then sums, indexed m * n + k
    let mut freqs = Vec::with_capacity(2 * n * n);
    for i in 0..n {
        for j in 0..n {
            freqs.push(w[i] - w[j]);
        }
    }
    let bosonic = matches!(data.coefficients, LinearCoefficients::Bosonic { .. });
    if bosonic {
        for i in 0..n {
            for j in 0..n {
                freqs.push(w[i] + w[j]);
            }
        }
    }
    let drive = drive_transform(profile, &freqs, config.length, opts.tol)?;
    let mix = |hat: &CMatrix, offset: usize, diagonal: bool| {
        CMatrix::from_fn(n, n, |i, j| if diagonal && i == j { phase[i] } else { hat[(i, j)] * phase[i] * drive[offset + i * n + j] })
    };
    let coefficients = match &data.coefficients {
        LinearCoefficients::Bosonic { alpha_hat, beta_hat } => {
            Coefficients::Bosonic { alpha: mix(alpha_hat, 0, true), beta: mix(beta_hat, n * n, false) }
        }
        LinearCoefficients::Fermionic { a_hat } => Coefficients::Fermionic { a: mix(a_hat, 0, true) },
    };
    finish(config, profile, coefficients, data.row_labels, data.row_frequencies, EvolutionMethod::FourierLinear, None)
}
