use std::path::Path;

use cavity_core::trajectory::AccelerationProfile;
use serde::Deserialize;

use crate::error::CliError;

#[derive(Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SegmentSpec {
    #[serde(rename = "duration_over_L")]
    pub duration: f64,
    #[serde(rename = "hL")]
    pub h_l: f64,
}

/// On-disk profile: piecewise-constant segments or samples of `a L` on a `tau / L` grid.
#[derive(Deserialize, Debug, Clone, PartialEq)]
#[serde(untagged)]
pub enum ProfileFile {
    Segments {
        segments: Vec<SegmentSpec>,
    },
    Sampled {
        #[serde(rename = "tau_over_L")]
        tau: Vec<f64>,
        #[serde(rename = "aL")]
        a_l: Vec<f64>,
    },
}

impl ProfileFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("profile: {e}")))
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("profile {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Profile for a cavity of unit length.
    pub fn to_profile(&self) -> AccelerationProfile {
        match self {
            ProfileFile::Segments { segments } => {
                let pairs: Vec<(f64, f64)> = segments.iter().map(|s| (s.duration, s.h_l)).collect();
                AccelerationProfile::from_dimensionless_segments(&pairs, 1.0)
            }
            ProfileFile::Sampled { tau, a_l } => AccelerationProfile::from_dimensionless_samples(tau, a_l, 1.0),
        }
    }
}
