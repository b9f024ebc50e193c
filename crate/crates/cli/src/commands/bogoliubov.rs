use cavity_core::bogoliubov::{coefficients_perturbative, coefficients_quadrature};
use serde_json::{json, Value};

use super::{coefficient_table, config_json, field_config, identity_table, set_summary, solver_options};
use crate::args::{BogoliubovArgs, DirectionArg, MethodArg};
use crate::error::CliError;
use crate::output::Table;

pub fn bogoliubov(a: &BogoliubovArgs, tol: f64) -> Result<(Value, Vec<Table>), CliError> {
    let h = match a.direction {
        DirectionArg::Right => a.h,
        DirectionArg::Left => -a.h,
    };
    let config = field_config(&a.field, h)?;
    let set = match a.method {
        MethodArg::Perturbative => coefficients_perturbative(&config, a.size)?,
        MethodArg::Quadrature => coefficients_quadrature(&config, a.size, &solver_options(tol, a.field.backend))?,
    };
    let (report, details) = set_summary(&set);
    let summary = json!({
        "config": config_json(&config),
        "method": a.method,
        "direction": a.direction,
        "size": a.size,
        "fermionic": set.is_fermionic(),
        "set": details,
    });
    Ok((summary, vec![coefficient_table("coefficients", &set.labels, &set.coefficients), identity_table(&report)]))
}
