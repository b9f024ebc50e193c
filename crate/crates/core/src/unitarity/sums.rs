use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;

use crate::bogoliubov::{dirac_entry, scalar_entry};
use crate::error::{Error, Result};
use crate::modes::{dirac_root, Family, MinkowskiMode};
use crate::numerics::sum::pairwise;

/// Which off-diagonal block of the fermionic coefficients is summed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DiracBlock {
    /// Positive-frequency rows, negative-frequency columns.
    PositiveRows,
    /// Negative-frequency rows, positive-frequency columns.
    NegativeRows,
}

/// A truncated sum of squared linear particle-creation coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct PartialSum {
    pub family: Family,
    /// Dimensionless mass `mu L`.
    pub mass: f64,
    pub cutoff: usize,
    pub value: f64,
    /// Size of the omitted terms.
    pub tail: f64,
    /// Whether `tail` is a rigorous upper bound (otherwise a power-law extrapolation).
    pub tail_is_bound: bool,
    /// Power-law extrapolation of the omitted terms from the last shells (NaN if too few).
    pub tail_estimate: f64,
    pub terms: usize,
}

impl PartialSum {
    /// `M^2` times the sum, the quantity with a finite large-mass limit.
    pub fn scaled(&self) -> f64 {
        self.mass * self.mass * self.value
    }

    pub fn scaled_tail(&self) -> f64 {
        self.mass * self.mass * self.tail
    }
}

fn check(mass: f64, cutoff: usize) -> Result<()> {
    if !(mass > 0.0) || !mass.is_finite() {
        return Err(Error::Domain(format!("mass must be positive and finite, got {mass}")));
    }
    if cutoff == 0 {
        return Err(Error::Domain("cutoff must be at least 1".into()));
    }
    Ok(())
}

/// Bound on the terms with an index beyond `cutoff`, from `|beta|^2 <= c mn / (m+n)^6`
/// (Dirichlet) or `|beta|^2 <= c / (m+n)^4` (Neumann) and integral comparison.
fn scalar_tail_bound(family: Family, cutoff: usize) -> f64 {
    let c = cutoff as f64;
    let pi4 = PI.powi(4);
    match family {
        Family::Dirichlet => 0.4 / pi4 * (0.5 / (c * c) + 4.0 / (3.0 * c * c * c)),
        _ => 8.0 / pi4 * (1.0 / (6.0 * c * c) + 1.0 / (3.0 * c * c * c)),
    }
}

/// `sum |beta_hat_mn(M)|^2` over `m, n <= cutoff` for the Dirichlet or Neumann cavity.
pub fn f_sum(mass: f64, family: Family, cutoff: usize) -> Result<PartialSum> {
    check(mass, cutoff)?;
    let first = match family {
        Family::Dirichlet => 1,
        Family::Neumann => 0,
        Family::Dirac => return Err(Error::Unsupported("use g_sum for the Dirac field".into())),
    };
    let labels: Vec<i64> = (first..=cutoff as i64).collect();
    let w: Vec<f64> = labels.iter().map(|&n| (mass * mass + (n as f64 * PI).powi(2)).sqrt()).collect();
    let term = |i: usize, j: usize| {
        let (_, b) = scalar_entry(family, labels[i], labels[j], w[i], w[j], mass);
        b * b
    };
    // shell s collects the pairs whose larger position is s
    let mut buf = Vec::with_capacity(2 * labels.len());
    let shells: Vec<f64> = (0..labels.len())
        .map(|s| {
            buf.clear();
            buf.extend((0..=s).map(|j| term(s, j)));
            buf.extend((0..s).map(|i| term(i, s)));
            pairwise(&buf)
        })
        .collect();
    Ok(PartialSum {
        family,
        mass,
        cutoff,
        value: pairwise(&shells),
        tail: scalar_tail_bound(family, cutoff),
        tail_is_bound: true,
        tail_estimate: shell_tail(&shells, first as f64),
        terms: labels.len() * labels.len(),
    })
}

/// Positive- and negative-frequency inertial Dirac modes `0..count` and `-1..-count` (L = 1).
pub(crate) fn dirac_modes(mass: f64, count: usize) -> Result<(Vec<MinkowskiMode>, Vec<MinkowskiMode>)> {
    let mut pos = Vec::with_capacity(count);
    let mut neg = Vec::with_capacity(count);
    for j in 0..count {
        let x = dirac_root(mass, j)?;
        let w = (mass * mass + x * x).sqrt();
        let mk =
            |label: i64, s: f64| MinkowskiMode { label, family: Family::Dirac, k: s * x, omega: s * w, norm: 0.0, half_angle: 0.0, mass };
        pos.push(mk(j as i64, 1.0));
        neg.push(mk(-(j as i64) - 1, -1.0));
    }
    Ok((pos, neg))
}

/// Extrapolates shell sums `S_c ~ A (c + offset)^-q` beyond the last shell.
fn shell_tail(shells: &[f64], offset: f64) -> f64 {
    let n = shells.len();
    if n < 8 {
        return f64::NAN;
    }
    let (c1, c2) = (n / 2, n - 1);
    let (s1, s2) = (shells[c1 - 1] + shells[c1], shells[c2 - 1] + shells[c2]);
    if !(s1 > 0.0 && s2 > 0.0) {
        return 0.0;
    }
    let (x1, x2) = (c1 as f64 - 0.5 + offset, c2 as f64 - 0.5 + offset);
    let q = (s1 / s2).ln() / (x2 / x1).ln();
    if q <= 1.0 {
        return f64::INFINITY;
    }
    // sum_{c >= n} A (c + offset)^-q with A from the last pair of shells
    let a = 0.5 * s2 * x2.powf(q);
    a * (n as f64 - 0.5 + offset).powf(1.0 - q) / (q - 1.0)
}

/// `sum |A_hat_kl(M)|^2` over the frequency-sign-mixing block with `count` modes of each sign.
pub fn g_sum(mass: f64, cutoff: usize, block: DiracBlock) -> Result<PartialSum> {
    check(mass, cutoff)?;
    let (pos, neg) = dirac_modes(mass, cutoff)?;
    let (rows, cols) = match block {
        DiracBlock::PositiveRows => (&pos, &neg),
        DiracBlock::NegativeRows => (&neg, &pos),
    };
    // shell c collects pairs whose larger mode index is c
    let mut shells: Vec<Vec<f64>> = (0..cutoff).map(|_| Vec::new()).collect();
    for (i, k) in rows.iter().enumerate() {
        for (j, l) in cols.iter().enumerate() {
            let a = dirac_entry(k, l, mass, 1.0)?;
            shells[i.max(j)].push(a * a);
        }
    }
    let shell_sums: Vec<f64> = shells.iter().map(|s| pairwise(s)).collect();
    Ok(PartialSum {
        family: Family::Dirac,
        mass,
        cutoff,
        value: pairwise(&shell_sums),
        tail: shell_tail(&shell_sums, 1.0),
        tail_is_bound: false,
        tail_estimate: shell_tail(&shell_sums, 1.0),
        terms: cutoff * cutoff,
    })
}

/// `f_sum` or `g_sum` (positive-frequency rows) by family.
pub fn hs_sum(mass: f64, family: Family, cutoff: usize) -> Result<PartialSum> {
    match family {
        Family::Dirac => g_sum(mass, cutoff, DiracBlock::PositiveRows),
        _ => f_sum(mass, family, cutoff),
    }
}

/// Closed-form large-mass limit of `M^2 F(M)` or `M^2 G(M)`.
pub fn asymptotic_limit(family: Family) -> f64 {
    let pi2 = PI * PI;
    match family {
        Family::Dirichlet => 1.0 / (90.0 * pi2),
        Family::Neumann => 11.0 / (90.0 * pi2),
        Family::Dirac => 7.0 / (45.0 * pi2) - 1.0 / 64.0,
    }
}

/// Cutoff reaching `|k| / mu` of about 25 (scalar) or 50 (Dirac, slower falloff).
pub fn converged_cutoff(mass: f64, family: Family) -> usize {
    let per_mass = if family == Family::Dirac { 16.0 } else { 8.0 };
    ((per_mass * mass).ceil() as usize).max(64)
}

impl PartialSum {
    /// `M^2` times the sum with the extrapolated tail added, when one is available.
    pub fn scaled_estimate(&self) -> f64 {
        if self.tail_estimate.is_finite() {
            self.mass * self.mass * (self.value + self.tail_estimate)
        } else {
            self.scaled()
        }
    }
}
