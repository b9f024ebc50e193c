use cavity_core::modes::{spectrum as mode_spectrum, Family, Frame, ModeEntry, ModeSet, PhaseConvention};
use serde_json::json;

use super::{config_json, field_config, solver_options};
use crate::args::{FrameArg, SpectrumArgs};
use crate::error::CliError;
use crate::output::Table;

fn phase_tag(p: PhaseConvention) -> &'static str {
    match p {
        PhaseConvention::SlopePositive => "slope-positive",
        PhaseConvention::ValuePositive => "value-positive",
        PhaseConvention::UpperComponentPositive => "upper-component-positive",
    }
}

/// Positive-frequency labels first, then negative ones by increasing `|label|`.
fn display_order(entries: &[ModeEntry]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..entries.len()).collect();
    idx.sort_by_key(|&i| {
        let l = entries[i].label;
        if l >= 0 {
            (0, l)
        } else {
            (1, -l)
        }
    });
    idx
}

pub fn spectrum(a: &SpectrumArgs, tol: f64) -> Result<(serde_json::Value, Vec<Table>), CliError> {
    if a.count == 0 {
        return Err(CliError::Usage("--count must be at least 1".into()));
    }
    let frame = match a.frame {
        FrameArg::Minkowski => Frame::Minkowski,
        FrameArg::Rindler => Frame::Rindler,
    };
    if frame == Frame::Minkowski && a.h != 0.0 {
        return Err(CliError::Usage("--h applies to --frame rindler".into()));
    }
    if frame == Frame::Rindler && a.h == 0.0 {
        return Err(CliError::Usage("--frame rindler needs a nonzero --h".into()));
    }
    let config = field_config(&a.field, a.h)?;
    let opts = solver_options(tol, a.field.backend);
    let inertial = mode_spectrum(&config, Frame::Minkowski, a.count, &opts)?;
    let ModeSet::Minkowski(ref modes) = inertial.modes else { unreachable!() };

    let mut backend = None;
    let table = match frame {
        Frame::Minkowski => {
            let mut t = Table::new("spectrum", &["index", "frequency", "kL", "norm_abs", "phase_tag"]);
            for i in display_order(&inertial.entries) {
                let e = &inertial.entries[i];
                t.push(vec![
                    e.label.into(),
                    e.frequency.into(),
                    modes[i].k.into(),
                    e.normalization.abs().into(),
                    phase_tag(e.phase).into(),
                ]);
            }
            t
        }
        Frame::Rindler => {
            let accel = mode_spectrum(&config, Frame::Rindler, a.count, &opts)?;
            backend = accel.backend.map(|b| format!("{b:?}").to_lowercase());
            let mut t =
                Table::new("spectrum", &["index", "frequency", "norm_abs", "phase_tag", "inertial_frequency", "h_Omega_over_omega"]);
            for i in display_order(&accel.entries) {
                let e = &accel.entries[i];
                let w = inertial.entries.iter().find(|m| m.label == e.label).map(|m| m.frequency).unwrap_or(f64::NAN);
                t.push(vec![
                    e.label.into(),
                    e.frequency.into(),
                    e.normalization.abs().into(),
                    phase_tag(e.phase).into(),
                    w.into(),
                    (a.h.abs() * e.frequency / w).into(),
                ]);
            }
            t
        }
    };
    let summary = json!({
        "config": config_json(&config),
        "frame": format!("{:?}", frame).to_lowercase(),
        "backend": backend,
        "count": a.count,
        "dirac": config.family() == Family::Dirac,
    });
    Ok((summary, vec![table]))
}
