use cavity_core::modes::Family;
use cavity_core::unitarity::limit_constants;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::output::{float_json, Table};

/// Coarsest tolerance the 2-D quadrature is asked for.
const QUADRATURE_FLOOR: f64 = 1e-13;

pub fn asymptotics(tol: f64) -> Result<(Value, Vec<Table>), CliError> {
    let consts = limit_constants(tol.max(QUADRATURE_FLOOR))?;
    let mut t = Table::new("constants", &["family", "quantity", "value", "closed_form", "relative_error", "error_estimate"]);
    let mut rows = Vec::new();
    for c in &consts {
        let (family, quantity) = match c.family {
            Family::Dirichlet => ("dirichlet", "M^2 F"),
            Family::Neumann => ("neumann", "M^2 F"),
            Family::Dirac => ("dirac", "M^2 G"),
        };
        t.push(vec![
            family.into(),
            quantity.into(),
            c.value.into(),
            c.closed_form.into(),
            c.relative_error.into(),
            c.error_estimate.into(),
        ]);
        rows.push(json!({ "family": family, "value": float_json(c.value), "closed_form": float_json(c.closed_form) }));
    }
    let worst = consts.iter().fold(0.0f64, |m, c| m.max(c.relative_error.abs()));
    Ok((json!({ "constants": rows, "max_relative_error": float_json(worst) }), vec![t]))
}
