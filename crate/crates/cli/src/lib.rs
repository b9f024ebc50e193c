//! Command-line front end for `cavity-core`: every command produces tables and a JSON
//! summary, rendered as JSON or CSV, together with a [`RunManifest`].

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod args;
pub mod commands;
pub mod error;
pub mod manifest;
pub mod output;
pub mod profile;

use std::io::Write;
use std::path::Path;

pub use args::{Cli, Command};
pub use error::CliError;
pub use manifest::{RunManifest, TolSource, Tolerance, DEFAULT_TOL, TOL_ENV};
pub use output::{Cell, Report, Table};

use manifest::OutputChecksum;
use serde_json::{Map, Value};

/// Largest tolerance accepted from a flag or the environment.
pub const MAX_TOL: f64 = 1e-2;

/// Picks the tolerance: `--tol`, then `CAVITY_TOL`, then [`DEFAULT_TOL`].
pub fn resolve_tolerance(flag: Option<f64>, env: Option<&str>) -> Result<Tolerance, CliError> {
    let check = |tol: f64, what: &str| {
        if tol > 0.0 && tol <= MAX_TOL {
            Ok(tol)
        } else {
            Err(CliError::Usage(format!("{what} must lie in (0, {MAX_TOL}], got {tol}")))
        }
    };
    if let Some(t) = flag {
        return Ok(Tolerance { tol: check(t, "--tol")?, source: TolSource::Flag });
    }
    if let Some(s) = env.map(str::trim).filter(|s| !s.is_empty()) {
        let t: f64 = s.parse().map_err(|_| CliError::Usage(format!("{TOL_ENV}=`{s}` is not a number")))?;
        return Ok(Tolerance { tol: check(t, TOL_ENV)?, source: TolSource::Environment });
    }
    Ok(Tolerance { tol: DEFAULT_TOL, source: TolSource::Default })
}

fn params(command: &Command) -> Result<Value, CliError> {
    let mut v = serde_json::to_value(command)?;
    if let Value::Object(outer) = &mut v {
        for inner in outer.values_mut() {
            if let Value::Object(fields) = inner {
                fields.remove("output");
            }
        }
    }
    Ok(v)
}

/// Runs a command at the given tolerance.
pub fn run_with(command: &Command, tol: f64) -> Result<Report, CliError> {
    let (summary, tables) = match command {
        Command::Spectrum(a) => commands::spectrum(a, tol)?,
        Command::Bogoliubov(a) => commands::bogoliubov(a, tol)?,
        Command::Trajectory(a) => commands::trajectory(a, tol)?,
        Command::Unitarity(a) => commands::unitarity(a)?,
        Command::Asymptotics(_) => commands::asymptotics(tol)?,
        Command::Figure2(a) => commands::figure2(a)?,
    };
    Ok(Report { command: command.name().into(), params: params(command)?, summary, tables })
}

/// Runs a command, resolving the tolerance from its flags and the environment.
pub fn run(cli: &Cli) -> Result<(Report, Tolerance), CliError> {
    let env = std::env::var(TOL_ENV).ok();
    let tol = resolve_tolerance(cli.command.output().tol, env.as_deref())?;
    Ok((run_with(&cli.command, tol.tol)?, tol))
}

/// Data files of a report with the manifest describing them.
#[derive(Clone, Debug)]
pub struct Rendered {
    pub files: Vec<(String, Vec<u8>)>,
    pub manifest: RunManifest,
}

impl Rendered {
    pub fn new(report: &Report, tol: Tolerance) -> Result<Self, CliError> {
        let mut files = Vec::new();
        for t in &report.tables {
            files.push((format!("{}.csv", t.name), t.to_csv()?.into_bytes()));
        }
        let mut data = serde_json::to_string_pretty(&report.data_json())?;
        data.push('\n');
        files.push((format!("{}.json", report.command), data.into_bytes()));
        let outputs = files.iter().map(|(n, d)| OutputChecksum::of(n, d)).collect();
        let manifest = RunManifest {
            command: report.command.clone(),
            params: report.params.clone(),
            version: env!("CARGO_PKG_VERSION").into(),
            core_version: cavity_core::VERSION.into(),
            tolerances: tol,
            outputs,
        };
        Ok(Self { files, manifest })
    }

    pub fn manifest_json(&self) -> Result<String, CliError> {
        let mut s = serde_json::to_string_pretty(&self.manifest)?;
        s.push('\n');
        Ok(s)
    }

    pub fn write_dir(&self, dir: &Path) -> Result<(), CliError> {
        std::fs::create_dir_all(dir)?;
        for (name, data) in &self.files {
            std::fs::write(dir.join(name), data)?;
        }
        std::fs::write(dir.join("manifest.json"), self.manifest_json()?)?;
        Ok(())
    }
}

/// Text printed on stdout: the first table as CSV, or manifest, summary and tables as JSON.
pub fn stdout_text(report: &Report, rendered: &Rendered, csv: bool) -> Result<String, CliError> {
    if csv {
        return report.tables.first().map(Table::to_csv).unwrap_or_else(|| Ok(String::new()));
    }
    let mut obj = Map::new();
    obj.insert("manifest".into(), serde_json::to_value(&rendered.manifest)?);
    if let Value::Object(data) = report.data_json() {
        obj.extend(data);
    }
    let mut s = serde_json::to_string_pretty(&Value::Object(obj))?;
    s.push('\n');
    Ok(s)
}

/// Runs the command, writes `--out-dir` files and prints to `out`.
pub fn execute(cli: &Cli, out: &mut impl Write) -> Result<(), CliError> {
    let (report, tol) = run(cli)?;
    let rendered = Rendered::new(&report, tol)?;
    let opts = cli.command.output();
    if let Some(dir) = &opts.out_dir {
        rendered.write_dir(dir)?;
    }
    out.write_all(stdout_text(&report, &rendered, opts.csv)?.as_bytes())?;
    out.flush()?;
    Ok(())
}
