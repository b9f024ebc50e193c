use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;

use super::sums::{asymptotic_limit, converged_cutoff, hs_sum};
use crate::error::{Error, Result};
use crate::modes::Family;
use crate::numerics::interp::CubicHermite;
use crate::numerics::sum::pairwise;

/// Which transverse lattice points carry modes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TransverseCounting {
    /// Indices `>= 0`, not all zero.
    NonNegative,
    /// Indices `>= 1`.
    Positive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Converges,
    DivergesLog,
    DivergesPower,
}

/// Inputs for a transverse-mode sum.
#[derive(Clone, Debug, PartialEq)]
pub struct TransverseSpec {
    pub family: Family,
    /// Number of spatial dimensions (`>= 2`).
    pub spatial_dim: usize,
    /// Bare mass in units of `1/L`.
    pub mu0: f64,
    /// Transverse side lengths in units of `L`, one per transverse dimension.
    pub lengths: Vec<f64>,
    pub counting: TransverseCounting,
    /// Largest lattice index per transverse dimension.
    pub cutoff: usize,
}

impl TransverseSpec {
    pub fn new(family: Family, spatial_dim: usize, mu0: f64, cutoff: usize) -> Self {
        let counting = if family == Family::Neumann { TransverseCounting::Positive } else { TransverseCounting::NonNegative };
        Self { family, spatial_dim, mu0, lengths: vec![1.0; spatial_dim.saturating_sub(1)], counting, cutoff }
    }
}

/// Partial sums over the transverse lattice at doubling cutoffs with the fitted growth.
#[derive(Clone, Debug, PartialEq)]
pub struct TransverseReport {
    pub spec: TransverseSpec,
    pub cutoffs: Vec<usize>,
    pub partial_sums: Vec<f64>,
    /// Least-squares exponent `p` of the increments between doubling cutoffs, `dS ~ K^p`.
    pub increment_exponent: f64,
    /// Least-squares slope of the partial sums against `ln K`.
    pub log_rate: f64,
    /// Remaining sum extrapolated geometrically from the last increment (convergent case).
    pub tail_estimate: f64,
    pub largest_term: f64,
    pub verdict: Verdict,
}

/// `M^2 F(M)` (or `M^2 G(M)`) on a log-spaced table up to a matching mass, then the
/// closed-form limit with a `1/M` correction.
pub(crate) struct ScaledSumTable {
    limit: f64,
    top: f64,
    top_value: f64,
    interp: Option<CubicHermite>,
}

const TABLE_TOP: f64 = 100.0;

impl ScaledSumTable {
    pub(crate) fn new(family: Family, m_min: f64) -> Result<Self> {
        let limit = asymptotic_limit(family);
        if m_min >= TABLE_TOP {
            let top_value = hs_sum(TABLE_TOP, family, converged_cutoff(TABLE_TOP, family))?.scaled_estimate();
            return Ok(Self { limit, top: TABLE_TOP, top_value, interp: None });
        }
        let points = ((TABLE_TOP / m_min).ln() / 0.25).ceil() as usize + 1;
        let lo = m_min.ln();
        let step = (TABLE_TOP.ln() - lo) / (points - 1) as f64;
        let xs: Vec<f64> = (0..points).map(|i| lo + step * i as f64).collect();
        let ys = xs.iter().map(|&x| {
            let m = x.exp();
            hs_sum(m, family, converged_cutoff(m, family)).map(|s| s.scaled_estimate())
        });
        let ys: Vec<f64> = ys.collect::<Result<_>>()?;
        let top_value = ys[points - 1];
        Ok(Self { limit, top: TABLE_TOP, top_value, interp: Some(CubicHermite::new(&xs, &ys)?) })
    }

    pub(crate) fn scaled(&self, mass: f64) -> f64 {
        match &self.interp {
            Some(i) if mass < self.top => i.eval(mass.ln()),
            _ => self.limit + (self.top_value - self.limit) * self.top / mass,
        }
    }
}

fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Sums `F(L sqrt(mu0^2 + k_perp^2))` (or `G`) over the transverse lattice and classifies
/// the growth with the cutoff.
pub fn transverse_verdict(spec: &TransverseSpec) -> Result<TransverseReport> {
    let dims = spec
        .spatial_dim
        .checked_sub(1)
        .filter(|&d| d >= 1)
        .ok_or_else(|| Error::Domain("need at least one transverse dimension".into()))?;
    if spec.lengths.len() != dims {
        return Err(Error::Domain(format!("{} transverse lengths for {} transverse dimensions", spec.lengths.len(), dims)));
    }
    if spec.lengths.iter().any(|l| !(*l > 0.0) || !l.is_finite()) || !(spec.mu0 >= 0.0) || !spec.mu0.is_finite() {
        return Err(Error::Domain("transverse lengths must be positive and the mass nonnegative".into()));
    }
    if spec.cutoff < 16 {
        return Err(Error::Domain("transverse cutoff must be at least 16".into()));
    }
    let first = match spec.counting {
        TransverseCounting::NonNegative => 0,
        TransverseCounting::Positive => 1,
    };
    let side = spec.cutoff + 1 - first;
    let points =
        side.checked_pow(dims as u32).filter(|&p| p <= 50_000_000).ok_or_else(|| Error::Domain("transverse lattice too large".into()))?;
    let k2_min = match spec.counting {
        TransverseCounting::NonNegative => spec.lengths.iter().map(|l| (PI / l).powi(2)).fold(f64::INFINITY, f64::min),
        TransverseCounting::Positive => spec.lengths.iter().map(|l| (PI / l).powi(2)).sum(),
    };
    let m_min = (spec.mu0 * spec.mu0 + k2_min).sqrt();
    let table = ScaledSumTable::new(spec.family, m_min.min(TABLE_TOP))?;

    let mut shells: Vec<Vec<f64>> = (0..=spec.cutoff).map(|_| Vec::new()).collect();
    let mut index = vec![first; dims];
    let mut largest: f64 = 0.0;
    for _ in 0..points {
        if index.iter().any(|&i| i != 0) {
            let k2: f64 = index.iter().zip(&spec.lengths).map(|(&i, l)| (PI * i as f64 / l).powi(2)).sum();
            let m = (spec.mu0 * spec.mu0 + k2).sqrt();
            let term = table.scaled(m) / (m * m);
            largest = largest.max(term);
            shells[*index.iter().max().unwrap()].push(term);
        }
        // odometer over the index box
        for slot in index.iter_mut() {
            *slot += 1;
            if *slot <= spec.cutoff {
                break;
            }
            *slot = first;
        }
    }
    let shell_sums: Vec<f64> = shells.iter().map(|s| pairwise(s)).collect();
    let mut cutoffs = Vec::new();
    let mut k = spec.cutoff;
    while k >= 4 && cutoffs.len() < 6 {
        cutoffs.push(k);
        k /= 2;
    }
    cutoffs.reverse();
    let partial_sums: Vec<f64> = cutoffs.iter().map(|&c| pairwise(&shell_sums[..=c])).collect();
    let increments: Vec<f64> = partial_sums.windows(2).map(|w| w[1] - w[0]).collect();
    let (lx, ly): (Vec<f64>, Vec<f64>) =
        cutoffs[1..].iter().zip(&increments).filter(|(_, d)| **d > 0.0).map(|(&c, d)| ((c as f64).ln(), d.ln())).unzip();
    let increment_exponent = if lx.len() >= 2 { least_squares_slope(&lx, &ly) } else { f64::NEG_INFINITY };
    let logs: Vec<f64> = cutoffs.iter().map(|&c| (c as f64).ln()).collect();
    let log_rate = least_squares_slope(&logs, &partial_sums);
    let verdict = if increment_exponent < -0.5 {
        Verdict::Converges
    } else if increment_exponent <= 0.5 {
        Verdict::DivergesLog
    } else {
        Verdict::DivergesPower
    };
    let tail_estimate = match verdict {
        Verdict::Converges => {
            let r = 2f64.powf(increment_exponent);
            increments.last().copied().unwrap_or(0.0) * r / (1.0 - r)
        }
        _ => f64::INFINITY,
    };
    Ok(TransverseReport {
        spec: spec.clone(),
        cutoffs,
        partial_sums,
        increment_exponent,
        log_rate,
        tail_estimate,
        largest_term: largest,
        verdict,
    })
}
