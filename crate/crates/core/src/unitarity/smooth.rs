use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::bogoliubov::{linear_coefficients_on, LinearCoefficients};
use crate::error::{Error, Result};
use crate::modes::{CavityConfig, Family, SolverOptions};
use crate::numerics::sum::pairwise;
use crate::trajectory::{drive_transform, AccelerationProfile};

/// Power the summand must beat for the diagnostic to pass.
pub const REQUIRED_FALLOFF: f64 = 8.0;

/// Hilbert-Schmidt sum of the linear particle-creation block of a profile.
#[derive(Clone, Debug, PartialEq)]
pub struct SmoothHsReport {
    pub cutoff: usize,
    pub total: f64,
    /// `(s, max |coefficient|^2 over pairs with index sum s or s + 1)`.
    pub shells: Vec<(usize, f64)>,
    /// Falloff exponent between the shell at `s_max / 2` and `s_max`.
    pub local_exponent: f64,
    pub faster_than_required: bool,
}

/// `sum |s_beta_mn|^2` (or the fermionic sign-mixing block) over `cutoff` modes, with a
/// power-law falloff check on the shell maxima.
pub fn smooth_profile_hs(
    config: &CavityConfig,
    profile: &AccelerationProfile,
    cutoff: usize,
    opts: &SolverOptions,
) -> Result<SmoothHsReport> {
    let base = CavityConfig { h: 0.0, ..*config };
    base.validate()?;
    if cutoff < 4 {
        return Err(Error::Domain("cutoff must be at least 4".into()));
    }
    let family = base.family();
    let (rows, cols): (Vec<i64>, Vec<i64>) = match family {
        Family::Dirac => ((0..cutoff as i64).collect(), (1..=cutoff as i64).map(|l| -l).collect()),
        _ => {
            let labels = family.truncation_labels(cutoff)?;
            (labels.clone(), labels)
        }
    };
    let data = linear_coefficients_on(&base, &rows, &cols)?;
    let hat = match &data.coefficients {
        LinearCoefficients::Bosonic { beta_hat, .. } => beta_hat,
        LinearCoefficients::Fermionic { a_hat } => a_hat,
    };
    let index = |label: i64| if label < 0 { (-label - 1) as usize } else { label as usize };
    let (wr, wc) = (&data.row_frequencies, &data.col_frequencies);
    let mut deltas = Vec::with_capacity(rows.len() * cols.len());
    for &r in wr {
        for &c in wc {
            deltas.push((r - if family == Family::Dirac { c } else { -c }).abs());
        }
    }
    let drive = drive_transform(profile, &deltas, config.length, opts.tol)?;
    let s_max = match family {
        Family::Dirac => cutoff - 1,
        _ => index(rows[0]) + index(rows[rows.len() - 1]),
    };
    let mut shell_max = alloc::vec![0.0f64; 2 * cutoff + 2];
    let mut row_sums = Vec::with_capacity(rows.len());
    let mut row = Vec::with_capacity(cols.len());
    for i in 0..rows.len() {
        row.clear();
        for j in 0..cols.len() {
            let v = hat[(i, j)].norm_sqr() * drive[i * cols.len() + j].norm_sqr();
            let s = index(rows[i]) + index(cols[j]);
            shell_max[s] = shell_max[s].max(v);
            row.push(v);
        }
        row_sums.push(pairwise(&row));
    }
    let top = s_max - 1;
    let shells: Vec<(usize, f64)> = (1..=top).map(|s| (s, shell_max[s].max(shell_max[s + 1]))).collect();
    let at = |s: usize| shell_max[s].max(shell_max[s + 1]);
    let lo = top / 2;
    let (d_lo, d_hi) = (at(lo), at(top));
    let local_exponent = if d_lo == 0.0 || d_hi == 0.0 { f64::INFINITY } else { (d_lo / d_hi).ln() / (top as f64 / lo as f64).ln() };
    Ok(SmoothHsReport {
        cutoff,
        total: pairwise(&row_sums),
        shells,
        local_exponent,
        faster_than_required: local_exponent > REQUIRED_FALLOFF,
    })
}
