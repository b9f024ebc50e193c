use cavity_core::bogoliubov::{linear_coefficients_on, LinearCoefficients};
use cavity_core::modes::{BoundaryCondition, CavityConfig};
use serde_json::{json, Value};

use crate::args::Figure2Args;
use crate::error::CliError;
use crate::output::{float_json, Table};

/// Parses a `k:l` label pair.
pub fn parse_pair(s: &str) -> Result<(i64, i64), CliError> {
    let bad = || CliError::Usage(format!("pair `{s}` is not of the form k:l"));
    let (k, l) = s.split_once(':').ok_or_else(bad)?;
    Ok((k.trim().parse().map_err(|_| bad())?, l.trim().parse().map_err(|_| bad())?))
}

fn column_name(k: i64, l: i64) -> String {
    format!("abs_A_{k}_{l}")
}

fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

pub fn figure2(a: &Figure2Args) -> Result<(Value, Vec<Table>), CliError> {
    if !(a.m_min > 0.0 && a.m_max > a.m_min && a.m_max.is_finite()) {
        return Err(CliError::Usage("need 0 < --M-min < --M-max".into()));
    }
    if a.points < 2 {
        return Err(CliError::Usage("--points must be at least 2".into()));
    }
    let pairs = a.pairs.iter().map(|p| parse_pair(p)).collect::<Result<Vec<_>, _>>()?;
    if pairs.is_empty() {
        return Err(CliError::Usage("--pairs is empty".into()));
    }
    let (lo, hi) = (a.m_min.ln(), a.m_max.ln());
    let masses: Vec<f64> = (0..a.points).map(|i| (lo + (hi - lo) * i as f64 / (a.points - 1) as f64).exp()).collect();

    let mut columns = vec!["M".to_string()];
    columns.extend(pairs.iter().map(|&(k, l)| column_name(k, l)));
    let mut curve = Table::with_columns("figure2", columns);
    let mut values = vec![Vec::with_capacity(masses.len()); pairs.len()];
    for &m in &masses {
        let config = CavityConfig::new(BoundaryCondition::DiracMit, 1.0, m, 0.0)?;
        let mut row = vec![m.into()];
        for (p, &(k, l)) in pairs.iter().enumerate() {
            let data = linear_coefficients_on(&config, &[k], &[l])?;
            let LinearCoefficients::Fermionic { a_hat } = data.coefficients else { unreachable!() };
            let v = a_hat[(0, 0)].norm();
            values[p].push(v);
            row.push(v.into());
        }
        curve.push(row);
    }

    let mut slopes = Table::new("slopes", &["k", "l", "block", "parity_forbidden", "slope", "end_slope"]);
    let mut fits = Vec::new();
    let log_m: Vec<f64> = masses.iter().map(|m| m.ln()).collect();
    for (&(k, l), vals) in pairs.iter().zip(&values) {
        let block = if (k >= 0) == (l >= 0) { "same-sign" } else { "opposite-sign" };
        let forbidden = vals.iter().all(|&v| v == 0.0);
        let (s, end) = if vals.iter().all(|&v| v > 0.0) {
            let log_v: Vec<f64> = vals.iter().map(|v| v.ln()).collect();
            let n = log_v.len();
            (slope(&log_m, &log_v), (log_v[n - 1] - log_v[n - 2]) / (log_m[n - 1] - log_m[n - 2]))
        } else {
            (f64::NAN, f64::NAN)
        };
        slopes.push(vec![k.into(), l.into(), block.into(), forbidden.into(), s.into(), end.into()]);
        fits.push(json!({
            "k": k,
            "l": l,
            "block": block,
            "parity_forbidden": forbidden,
            "slope": float_json(s),
            "end_slope": float_json(end),
        }));
    }
    let summary = json!({
        "M_min": float_json(a.m_min),
        "M_max": float_json(a.m_max),
        "points": a.points,
        "fits": fits,
    });
    Ok((summary, vec![curve, slopes]))
}
