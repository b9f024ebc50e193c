//! Hilbert-Schmidt diagnostics of the linear particle-creation coefficients: mass sums and
//! their large-mass limits, transverse-mode sums and the falloff for smooth profiles.

mod constants;
mod smooth;
mod sums;
mod transverse;

use alloc::vec::Vec;

use crate::error::Result;
use crate::modes::Family;

pub use constants::{limit_constant, limit_constants, LimitConstant};
pub use smooth::{smooth_profile_hs, SmoothHsReport, REQUIRED_FALLOFF};
pub use sums::{asymptotic_limit, converged_cutoff, f_sum, g_sum, hs_sum, DiracBlock, PartialSum};
pub use transverse::{transverse_verdict, TransverseCounting, TransverseReport, TransverseSpec, Verdict};

/// Partial sums over a mass list, the closed-form limit and any transverse verdicts.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitarityReport {
    pub family: Family,
    pub sums: Vec<PartialSum>,
    pub limit: f64,
    pub transverse: Vec<TransverseReport>,
}

pub fn unitarity_report(family: Family, masses: &[f64], cutoff: usize, transverse: &[TransverseSpec]) -> Result<UnitarityReport> {
    let sums = masses.iter().map(|&m| hs_sum(m, family, cutoff)).collect::<Result<Vec<_>>>()?;
    let transverse = transverse.iter().map(transverse_verdict).collect::<Result<Vec<_>>>()?;
    Ok(UnitarityReport { family, sums, limit: asymptotic_limit(family), transverse })
}
