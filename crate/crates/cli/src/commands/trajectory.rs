use cavity_core::bogoliubov::Method;
use cavity_core::trajectory::{evolve_fourier, evolve_segments};
use serde_json::{json, Value};

use super::{coefficient_table, config_json, field_config, identity_table, set_summary, solver_options};
use crate::args::{EvolutionArg, MethodArg, TrajectoryArgs};
use crate::error::CliError;
use crate::output::{float_json, Table};
use crate::profile::ProfileFile;

pub fn trajectory(a: &TrajectoryArgs, tol: f64) -> Result<(Value, Vec<Table>), CliError> {
    let file = ProfileFile::read(&a.profile)?;
    let profile = file.to_profile();
    profile.validate(1.0)?;
    let config = field_config(&a.field, 0.0)?;
    let opts = solver_options(tol, a.field.backend);
    let method = match a.method {
        EvolutionArg::Auto if profile.is_segmented() => EvolutionArg::Segments,
        EvolutionArg::Auto => EvolutionArg::Fourier,
        m => m,
    };
    let result = match method {
        EvolutionArg::Segments => {
            if !profile.is_segmented() {
                return Err(CliError::Usage("--method segments needs a segment profile".into()));
            }
            let ingredients = match a.ingredients {
                MethodArg::Perturbative => Method::PerturbativeLinear,
                MethodArg::Quadrature => Method::Quadrature,
            };
            evolve_segments(&config, &profile, a.size, ingredients, &opts)?
        }
        _ => evolve_fourier(&config, &profile, a.size, &opts)?,
    };
    let (report, details) = set_summary(&result.set);
    let summary = json!({
        "config": config_json(&config),
        "method": format!("{:?}", result.method),
        "size": a.size,
        "duration_over_L": float_json(result.duration),
        "peak_hL": float_json(profile.peak_h(1.0)),
        "variation_hL": float_json(profile.variation(1.0)),
        "deviation_from_free": float_json(result.deviation_from_free()),
        "fermionic": result.set.is_fermionic(),
        "set": details,
    });
    Ok((summary, vec![coefficient_table("coefficients", result.labels(), result.coefficients()), identity_table(&report)]))
}
