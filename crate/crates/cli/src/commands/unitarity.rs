use cavity_core::modes::Family;
use cavity_core::unitarity::{asymptotic_limit, converged_cutoff, hs_sum, transverse_verdict, TransverseCounting, TransverseSpec, Verdict};
use serde_json::{json, Value};

use crate::args::{CountingArg, SumFamilyArg, UnitarityArgs};
use crate::error::CliError;
use crate::output::{float_json, Table};

const MAX_SCAN_POINTS: usize = 10_000;

fn masses(a: &UnitarityArgs) -> Result<Vec<f64>, CliError> {
    match (&a.scan, a.mass) {
        (Some(s), None) => {
            let (start, stop, step) = (s[0], s[1], s[2]);
            if !(start.is_finite() && stop.is_finite() && step > 0.0 && step.is_finite() && stop >= start) {
                return Err(CliError::Usage("--scan needs finite START <= STOP and STEP > 0".into()));
            }
            let n = ((stop - start) / step + 1e-9).floor() as usize + 1;
            if n > MAX_SCAN_POINTS {
                return Err(CliError::Usage(format!("--scan has {n} points, at most {MAX_SCAN_POINTS} allowed")));
            }
            Ok((0..n).map(|i| start + i as f64 * step).collect())
        }
        (None, Some(m)) => Ok(vec![m]),
        (None, None) => Err(CliError::Usage("give --M or --scan".into())),
        (Some(_), Some(_)) => Err(CliError::Usage("--M and --scan are exclusive".into())),
    }
}

fn default_transverse_cutoff(dim: usize) -> usize {
    match dim {
        0..=2 => 512,
        3 => 256,
        4 => 64,
        _ => 32,
    }
}

pub fn verdict_tag(v: Verdict) -> &'static str {
    match v {
        Verdict::Converges => "CONVERGES",
        Verdict::DivergesLog => "DIVERGES(log)",
        Verdict::DivergesPower => "DIVERGES(power)",
    }
}

pub fn unitarity(a: &UnitarityArgs) -> Result<(Value, Vec<Table>), CliError> {
    let family = match a.bc {
        SumFamilyArg::Dirichlet => Family::Dirichlet,
        SumFamilyArg::Neumann => Family::Neumann,
        SumFamilyArg::Dirac => Family::Dirac,
    };
    let limit = asymptotic_limit(family);
    let mut scan = Table::new(
        "scan",
        &["M", "cutoff", "sum", "scaled", "tail", "tail_is_bound", "tail_estimate", "scaled_estimate", "limit", "ratio"],
    );
    for m in masses(a)? {
        let cutoff = a.cutoff.unwrap_or_else(|| converged_cutoff(m, family));
        let s = hs_sum(m, family, cutoff)?;
        let est = s.scaled_estimate();
        scan.push(vec![
            m.into(),
            cutoff.into(),
            s.value.into(),
            s.scaled().into(),
            s.tail.into(),
            s.tail_is_bound.into(),
            s.tail_estimate.into(),
            est.into(),
            limit.into(),
            (est / limit).into(),
        ]);
    }
    let mut tables = vec![scan];
    let mut transverse = Value::Null;
    if let Some(dim) = a.transverse_dim {
        let cutoff = a.transverse_cutoff.unwrap_or_else(|| default_transverse_cutoff(dim));
        let mut spec = TransverseSpec::new(family, dim, a.mu0, cutoff);
        if let Some(l) = &a.lengths {
            spec.lengths = l.clone();
        }
        if let Some(c) = a.counting {
            spec.counting = match c {
                CountingArg::Nonnegative => TransverseCounting::NonNegative,
                CountingArg::Positive => TransverseCounting::Positive,
            };
        }
        let r = transverse_verdict(&spec)?;
        let mut t = Table::new("transverse", &["cutoff", "partial_sum"]);
        for (c, s) in r.cutoffs.iter().zip(&r.partial_sums) {
            t.push(vec![(*c).into(), (*s).into()]);
        }
        tables.push(t);
        transverse = json!({
            "spatial_dim": dim,
            "mu0": float_json(a.mu0),
            "lengths": r.spec.lengths.iter().map(|&l| float_json(l)).collect::<Vec<_>>(),
            "counting": format!("{:?}", r.spec.counting).to_lowercase(),
            "cutoff": cutoff,
            "verdict": verdict_tag(r.verdict),
            "increment_exponent": float_json(r.increment_exponent),
            "log_rate": float_json(r.log_rate),
            "tail_estimate": float_json(r.tail_estimate),
            "largest_term": float_json(r.largest_term),
        });
    }
    let summary = json!({
        "family": format!("{family:?}").to_lowercase(),
        "quantity": if family == Family::Dirac { "G" } else { "F" },
        "limit": float_json(limit),
        "transverse": transverse,
    });
    Ok((summary, tables))
}
