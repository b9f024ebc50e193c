mod asymptotics;
mod bogoliubov;
mod figure2;
mod spectrum;
mod trajectory;
mod unitarity;

pub use asymptotics::asymptotics;
pub use bogoliubov::bogoliubov;
pub use figure2::{figure2, parse_pair};
pub use spectrum::spectrum;
pub use trajectory::trajectory;
pub use unitarity::unitarity;

use cavity_core::bogoliubov::{check_identities, row_deficits, BogoliubovSet, Coefficients, IdentityReport};
use cavity_core::modes::{maxwell_reduction, BoundaryCondition, CavityConfig, Polarisation, RindlerBackend, SolverOptions};
use cavity_core::Complex64;
use serde_json::{json, Value};

use crate::args::{BackendArg, FieldArg, FieldArgs, PolArg};
use crate::error::CliError;
use crate::output::{float_json, Cell, Table};

pub(crate) fn solver_options(tol: f64, backend: BackendArg) -> SolverOptions {
    let backend = match backend {
        BackendArg::Auto => RindlerBackend::Auto,
        BackendArg::Ode => RindlerBackend::Ode,
        BackendArg::Bessel => RindlerBackend::Bessel,
    };
    SolverOptions { tol, backend }
}

/// Unit-length cavity for the field flags at acceleration `h`.
pub(crate) fn field_config(f: &FieldArgs, h: f64) -> Result<CavityConfig, CliError> {
    if !(f.lx.is_finite() && f.ly.is_finite()) {
        return Err(CliError::Usage("--Lx and --Ly must be finite".into()));
    }
    if f.field == FieldArg::Maxwell {
        if f.mass.is_some() {
            return Err(CliError::Usage("--M is fixed by --m, --n, --Lx and --Ly for maxwell".into()));
        }
        let pol = match f.pol.ok_or_else(|| CliError::Usage("maxwell needs --pol".into()))? {
            PolArg::I => Polarisation::I,
            PolArg::II => Polarisation::II,
        };
        let (m, n) = match (f.m, f.n) {
            (Some(m), Some(n)) => (m, n),
            _ => return Err(CliError::Usage("maxwell needs --m and --n".into())),
        };
        return Ok(maxwell_reduction(f.lx, f.ly, 1.0, m, n, pol)?.with_h(h)?);
    }
    if f.pol.is_some() || f.m.is_some() || f.n.is_some() {
        return Err(CliError::Usage("--pol, --m and --n apply to maxwell only".into()));
    }
    let mass = f.mass.ok_or_else(|| CliError::Usage("--M is required".into()))?;
    let bc = match f.field {
        FieldArg::ScalarDirichlet => BoundaryCondition::Dirichlet,
        FieldArg::ScalarNeumann => BoundaryCondition::Neumann,
        FieldArg::DiracMit => BoundaryCondition::DiracMit,
        FieldArg::Maxwell => unreachable!(),
    };
    Ok(CavityConfig::new(bc, 1.0, mass, h)?)
}

pub(crate) fn config_json(c: &CavityConfig) -> Value {
    json!({
        "bc": format!("{:?}", c.bc),
        "M": float_json(c.dimensionless_mass()),
        "h": float_json(c.h),
    })
}

/// Long-format coefficient table: one row per `(row, col)` label pair.
pub(crate) fn coefficient_table(name: &str, labels: &[i64], coefficients: &Coefficients) -> Table {
    match coefficients {
        Coefficients::Bosonic { alpha, beta } => {
            let mut t = Table::new(name, &["row", "col", "alpha_re", "alpha_im", "beta_re", "beta_im"]);
            for (i, &r) in labels.iter().enumerate() {
                for (j, &c) in labels.iter().enumerate() {
                    let (a, b): (Complex64, Complex64) = (alpha[(i, j)], beta[(i, j)]);
                    t.push(vec![r.into(), c.into(), a.re.into(), a.im.into(), b.re.into(), b.im.into()]);
                }
            }
            t
        }
        Coefficients::Fermionic { a } => {
            let mut t = Table::new(name, &["row", "col", "a_re", "a_im"]);
            for (i, &r) in labels.iter().enumerate() {
                for (j, &c) in labels.iter().enumerate() {
                    let z = a[(i, j)];
                    t.push(vec![r.into(), c.into(), z.re.into(), z.im.into()]);
                }
            }
            t
        }
    }
}

pub(crate) fn identity_table(report: &IdentityReport) -> Table {
    let mut t = Table::new("identities", &["check", "residual", "budget", "within_budget"]);
    for c in &report.checks {
        t.push(vec![c.name.into(), c.residual.into(), report.budget.into(), Cell::Bool(c.residual <= report.budget)]);
    }
    t
}

pub(crate) fn identity_json(report: &IdentityReport) -> Value {
    let checks: serde_json::Map<String, Value> = report.checks.iter().map(|c| (c.name.to_string(), float_json(c.residual))).collect();
    json!({
        "residuals": checks,
        "max_residual": float_json(report.max_residual()),
        "budget": float_json(report.budget),
        "within_budget": report.within_budget,
    })
}

pub(crate) fn set_summary(set: &BogoliubovSet) -> (IdentityReport, Value) {
    let report = check_identities(set);
    let deficits = row_deficits(&set.coefficients);
    let max_deficit = deficits.iter().fold(0.0f64, |m, d| m.max(d.abs()));
    let v = json!({
        "labels": set.labels,
        "inertial_frequencies": set.inertial_frequencies.iter().map(|&w| float_json(w)).collect::<Vec<_>>(),
        "rindler_frequencies": set.rindler_frequencies.iter().map(|&w| float_json(w)).collect::<Vec<_>>(),
        "tail_estimate": float_json(set.tail_estimate),
        "row_deficits": deficits.iter().map(|&d| float_json(d)).collect::<Vec<_>>(),
        "max_row_deficit": float_json(max_deficit),
        "identities": identity_json(&report),
    });
    (report, v)
}
