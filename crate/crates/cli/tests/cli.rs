use std::f64::consts::PI;
use std::path::Path;
use std::process::{Command as Process, Output};

use cavity_cli::manifest::sha256_hex;
use cavity_cli::{run_with, Cell, Cli, Report, Table};
use clap::Parser;
use serde_json::Value;

fn cavity(args: &[&str]) -> Output {
    Process::new(env!("CARGO_BIN_EXE_cavity")).args(args).env_remove("CAVITY_TOL").output().unwrap()
}

fn cavity_env(args: &[&str], tol: &str) -> Output {
    Process::new(env!("CARGO_BIN_EXE_cavity")).args(args).env("CAVITY_TOL", tol).output().unwrap()
}

fn report(args: &[&str]) -> Report {
    let mut argv = vec!["cavity"];
    argv.extend_from_slice(args);
    let cli = Cli::try_parse_from(argv).unwrap();
    run_with(&cli.command, 1e-12).unwrap()
}

fn float(t: &Table, row: usize, col: &str) -> f64 {
    match &t.rows[row][t.column_index(col).unwrap_or_else(|| panic!("no column {col}"))] {
        Cell::Float(v) => *v,
        Cell::Int(v) => *v as f64,
        other => panic!("{other:?} is not numeric"),
    }
}

fn int(t: &Table, row: usize, col: &str) -> i64 {
    match &t.rows[row][t.column_index(col).unwrap()] {
        Cell::Int(v) => *v,
        other => panic!("{other:?} is not an integer"),
    }
}

/// Entry `(row, col)` of a long-format coefficient table.
fn entry(t: &Table, row: i64, col: i64, part: &str) -> f64 {
    let i = (0..t.rows.len()).find(|&i| int(t, i, "row") == row && int(t, i, "col") == col).unwrap();
    float(t, i, part)
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn csv_rows(text: &[u8]) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_reader(text);
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r.records().map(|rec| rec.unwrap().iter().map(String::from).collect()).collect();
    (header, rows)
}

fn write_profile(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn dirac_spectrum_starts_at_first_bag_root() {
    let r = report(&["spectrum", "--field", "dirac-mit", "--M", "1", "--frame", "minkowski", "--count", "4"]);
    let t = &r.tables[0];
    assert_eq!(t.rows.len(), 8);
    assert_eq!(int(t, 0, "index"), 0);
    assert!((float(t, 0, "kL") - 2.02876).abs() < 1e-5);
    let k0 = float(t, 0, "kL");
    assert!((k0.tan() / k0 + 1.0).abs() < 1e-12);
}

#[test]
fn massless_dirichlet_spectrum_is_harmonic() {
    let r = report(&["spectrum", "--field", "scalar-dirichlet", "--M", "0", "--count", "3"]);
    let t = &r.tables[0];
    for n in 0..3 {
        assert!((float(t, n, "frequency") - (n + 1) as f64 * PI).abs() < 1e-14);
        assert_eq!(t.rows[n][4], Cell::Text("slope-positive".into()));
    }
}

#[test]
fn accelerated_frequency_ratio_is_one_to_second_order() {
    let dev = |h: &str| {
        let r = report(&["spectrum", "--field", "scalar-neumann", "--M", "1", "--frame", "rindler", "--h", h, "--count", "3"]);
        let t = &r.tables[0];
        (0..3).map(|i| (float(t, i, "h_Omega_over_omega") - 1.0).abs()).fold(0.0, f64::max)
    };
    let (a, b) = (dev("0.1"), dev("0.05"));
    assert!(a < 0.01, "{a}");
    assert!((a / b - 4.0).abs() < 0.3, "{}", a / b);
}

#[test]
fn perturbative_beta_12_matches_closed_form() {
    let r = report(&["bogoliubov", "--method", "perturbative", "--field", "scalar-dirichlet", "--h", "0.01", "--M", "0", "--size", "4"]);
    let t = r.table("coefficients").unwrap();
    let expected = 0.01 * 4.0 / (27.0 * 2f64.sqrt() * PI * PI);
    assert!((entry(t, 1, 2, "beta_re") / expected - 1.0).abs() < 1e-12);
    assert_eq!(entry(t, 1, 2, "beta_im"), 0.0);
    assert!(r.summary["set"]["identities"]["within_budget"].as_bool().unwrap());
}

#[test]
fn leftward_run_carries_parity_phases() {
    for method in ["perturbative", "quadrature"] {
        let base = ["bogoliubov", "--method", method, "--field", "scalar-neumann", "--h", "0.05", "--M", "1", "--size", "4"];
        let right = report(&base);
        let mut left_args = base.to_vec();
        left_args.extend(["--direction", "left"]);
        let left = report(&left_args);
        let (r, l) = (right.table("coefficients").unwrap(), left.table("coefficients").unwrap());
        for i in 0..r.rows.len() {
            let sign = if (int(r, i, "row") + int(r, i, "col")) % 2 == 0 { 1.0 } else { -1.0 };
            for part in ["alpha_re", "alpha_im", "beta_re", "beta_im"] {
                assert!((float(l, i, part) - sign * float(r, i, part)).abs() < 1e-10, "{method} {part}");
            }
        }
    }
}

#[test]
fn maxwell_polarisation_two_negates_neumann_beta() {
    let common = ["--h", "0.05", "--size", "4", "--method", "quadrature"];
    let mut mx = vec!["bogoliubov", "--field", "maxwell", "--pol", "II", "--m", "1", "--n", "1", "--Lx", "1", "--Ly", "1"];
    mx.extend(common);
    let mass = format!("{:?}", PI * 2f64.sqrt());
    let mut neu = vec!["bogoliubov", "--field", "scalar-neumann", "--M", &mass];
    neu.extend(common);
    let (a, b) = (report(&mx), report(&neu));
    let (ta, tb) = (a.table("coefficients").unwrap(), b.table("coefficients").unwrap());
    let mut largest: f64 = 0.0;
    for i in 0..ta.rows.len() {
        for part in ["alpha_re", "alpha_im"] {
            assert!((float(ta, i, part) - float(tb, i, part)).abs() < 1e-12);
        }
        for part in ["beta_re", "beta_im"] {
            assert!((float(ta, i, part) + float(tb, i, part)).abs() < 1e-12);
            largest = largest.max(float(tb, i, part).abs());
        }
    }
    assert!(largest > 1e-4);
}

#[test]
fn maxwell_flags_are_checked() {
    assert_eq!(cavity(&["bogoliubov", "--field", "maxwell", "--h", "0.1", "--m", "1", "--n", "1"]).status.code(), Some(2));
    assert_eq!(cavity(&["bogoliubov", "--field", "maxwell", "--pol", "II", "--m", "0", "--n", "1", "--h", "0.1"]).status.code(), Some(2));
    assert_eq!(
        cavity(&["bogoliubov", "--field", "maxwell", "--pol", "I", "--m", "1", "--n", "0", "--M", "2", "--h", "0.1"]).status.code(),
        Some(2)
    );
    assert_eq!(cavity(&["bogoliubov", "--field", "scalar-neumann", "--M", "1", "--pol", "I", "--h", "0.1"]).status.code(), Some(2));
}

#[test]
fn zero_profile_gives_free_phases() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_profile(dir.path(), "zero.json", r#"{"segments":[{"duration_over_L":1.25,"hL":0.0}]}"#);
    for field in [["--field", "scalar-dirichlet", "--M", "1"], ["--field", "dirac-mit", "--M", "2"]] {
        let mut args = vec!["trajectory", "--profile", &p, "--size", "4"];
        args.extend(field);
        let r = report(&args);
        let t = r.table("coefficients").unwrap();
        let re = if field[1] == "dirac-mit" { "a_re" } else { "alpha_re" };
        let im = if field[1] == "dirac-mit" { "a_im" } else { "alpha_im" };
        for i in 0..t.rows.len() {
            let modulus = float(t, i, re).hypot(float(t, i, im));
            let expected = if int(t, i, "row") == int(t, i, "col") { 1.0 } else { 0.0 };
            assert!((modulus - expected).abs() < 1e-14);
            if t.column_index("beta_re").is_some() {
                assert_eq!(float(t, i, "beta_re"), 0.0);
                assert_eq!(float(t, i, "beta_im"), 0.0);
            }
        }
        assert_eq!(r.summary["deviation_from_free"].as_f64().unwrap(), 0.0);
    }
}

fn max_gap(a: &Report, b: &Report) -> f64 {
    let (ta, tb) = (a.table("coefficients").unwrap(), b.table("coefficients").unwrap());
    let mut gap: f64 = 0.0;
    for i in 0..ta.rows.len() {
        for c in 2..ta.columns.len() {
            let col = &ta.columns[c];
            gap = gap.max((float(ta, i, col) - float(tb, i, col)).abs());
        }
    }
    gap
}

#[test]
fn top_hat_composition_matches_fourier_to_second_order() {
    let dir = tempfile::tempdir().unwrap();
    let gap = |h: f64| {
        let p = write_profile(
            dir.path(),
            &format!("top{h}.json"),
            &format!(
                r#"{{"segments":[{{"duration_over_L":0.4,"hL":0.0}},{{"duration_over_L":1.3,"hL":{h}}},{{"duration_over_L":0.6,"hL":0.0}}]}}"#
            ),
        );
        let base = ["trajectory", "--profile", &p, "--field", "scalar-dirichlet", "--M", "1", "--size", "4"];
        let seg = report(&base);
        let mut f = base.to_vec();
        f.extend(["--method", "fourier"]);
        max_gap(&seg, &report(&f))
    };
    let ratio = gap(0.02) / gap(0.01);
    assert!((ratio - 4.0).abs() < 0.4, "{ratio}");
}

#[test]
fn resonant_drive_grows_linearly() {
    let dir = tempfile::tempdir().unwrap();
    let (w1, w2) = ((1.0 + PI * PI).sqrt(), (1.0 + 4.0 * PI * PI).sqrt());
    let drive = w1 + w2;
    let beta_12 = |periods: usize| {
        let span = periods as f64 * 2.0 * PI / drive;
        let n = 400 * periods + 1;
        let tau: Vec<f64> = (0..n).map(|i| span * i as f64 / (n - 1) as f64).collect();
        let al: Vec<f64> = tau.iter().map(|t| 1e-3 * (drive * t).sin()).collect();
        let body = serde_json::json!({ "tau_over_L": tau, "aL": al }).to_string();
        let p = write_profile(dir.path(), &format!("res{periods}.json"), &body);
        let r = report(&["trajectory", "--profile", &p, "--field", "scalar-dirichlet", "--M", "1", "--size", "3"]);
        let t = r.table("coefficients").unwrap();
        entry(t, 1, 2, "beta_re").hypot(entry(t, 1, 2, "beta_im"))
    };
    let (a, b) = (beta_12(10), beta_12(20));
    assert!((b / a - 2.0).abs() < 0.05, "{}", b / a);
}

#[test]
fn malformed_profiles_exit_with_usage_code() {
    let dir = tempfile::tempdir().unwrap();
    let bad = [
        ("junk.json", "not json"),
        ("mixed.json", r#"{"tau_over_L":[0,1]}"#),
        ("fast.json", r#"{"segments":[{"duration_over_L":1.0,"hL":2.5}]}"#),
        ("short.json", r#"{"tau_over_L":[0,1,0.5],"aL":[0,0.1,0]}"#),
    ];
    for (name, body) in bad {
        let p = write_profile(dir.path(), name, body);
        let out = cavity(&["trajectory", "--profile", &p, "--field", "scalar-dirichlet", "--M", "1"]);
        assert_eq!(out.status.code(), Some(2), "{name}: {}", String::from_utf8_lossy(&out.stderr));
    }
    let missing = dir.path().join("absent.json");
    let out = cavity(&["trajectory", "--profile", missing.to_str().unwrap(), "--field", "scalar-dirichlet", "--M", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exit_codes_follow_the_contract() {
    assert_eq!(cavity(&["spectrum", "--field", "scalar-dirichlet", "--M", "0"]).status.code(), Some(0));
    assert_eq!(cavity(&["spectrum", "--field", "bogus", "--M", "0"]).status.code(), Some(2));
    assert_eq!(cavity(&["spectrum", "--field", "scalar-dirichlet"]).status.code(), Some(2));
    assert_eq!(cavity(&["spectrum", "--field", "scalar-neumann", "--M", "0"]).status.code(), Some(2));
    assert_eq!(cavity(&["bogoliubov", "--field", "dirac-mit", "--M", "1", "--h", "0.1", "--size", "5"]).status.code(), Some(2));
    assert_eq!(cavity(&["unitarity", "--bc", "dirichlet"]).status.code(), Some(2));
    assert_eq!(cavity(&["unitarity", "--bc", "dirichlet", "--scan", "10", "1", "1"]).status.code(), Some(2));
    assert_eq!(cavity(&["figure2", "--pairs", "0-1"]).status.code(), Some(2));
    assert_eq!(cavity(&["asymptotics", "--tol", "0"]).status.code(), Some(2));
    assert_eq!(cavity(&["asymptotics", "--json", "--csv"]).status.code(), Some(2));
    let failed = cavity(&[
        "spectrum",
        "--field",
        "scalar-dirichlet",
        "--M",
        "1",
        "--frame",
        "rindler",
        "--h",
        "0.5",
        "--backend",
        "bessel",
        "--tol",
        "1e-300",
    ]);
    assert_eq!(failed.status.code(), Some(3), "{}", String::from_utf8_lossy(&failed.stderr));
    assert!(failed.stdout.is_empty());
}

#[test]
fn tolerance_comes_from_flag_then_environment() {
    let args = ["asymptotics"];
    let source = |out: &Output| {
        let v = stdout_json(out);
        (v["manifest"]["tolerances"]["source"].as_str().unwrap().to_string(), v["manifest"]["tolerances"]["tol"].as_f64().unwrap())
    };
    assert_eq!(source(&cavity(&args)), ("default".into(), 1e-12));
    assert_eq!(source(&cavity_env(&args, "1e-8")), ("environment".into(), 1e-8));
    assert_eq!(source(&cavity_env(&["asymptotics", "--tol", "1e-9"], "1e-8")), ("flag".into(), 1e-9));
    assert_eq!(cavity_env(&args, "abc").status.code(), Some(2));
    assert_eq!(cavity_env(&args, "-1").status.code(), Some(2));
    let failed = Process::new(env!("CARGO_BIN_EXE_cavity"))
        .args(["spectrum", "--field", "scalar-dirichlet", "--M", "1", "--frame", "rindler", "--h", "0.5", "--backend", "bessel"])
        .env("CAVITY_TOL", "1e-300")
        .output()
        .unwrap();
    assert_eq!(failed.status.code(), Some(3));
}

/// One cheap invocation of every command.
fn every_command(profile: &str) -> Vec<Vec<String>> {
    let cmds: Vec<Vec<&str>> = vec![
        vec!["spectrum", "--field", "dirac-mit", "--M", "1", "--frame", "rindler", "--h", "0.2", "--count", "2"],
        vec!["bogoliubov", "--field", "scalar-dirichlet", "--M", "1", "--h", "0.05", "--size", "3", "--method", "quadrature"],
        vec!["trajectory", "--profile", profile, "--field", "dirac-mit", "--M", "1", "--size", "4"],
        vec!["unitarity", "--bc", "neumann", "--scan", "1", "3", "1", "--transverse-dim", "2", "--transverse-cutoff", "64"],
        vec!["asymptotics"],
        vec!["figure2", "--points", "5"],
    ];
    cmds.into_iter().map(|c| c.into_iter().map(String::from).collect()).collect()
}

#[test]
fn every_command_renders_csv_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_profile(dir.path(), "p.json", r#"{"tau_over_L":[0,0.5,1,1.5],"aL":[0,0.05,-0.02,0]}"#);
    for cmd in every_command(&p) {
        let args: Vec<&str> = cmd.iter().map(String::as_str).collect();
        let mut csv_args = args.clone();
        csv_args.extend(["--csv", "--tol", "1e-10"]);
        let out = cavity(&csv_args);
        assert!(out.status.success(), "{cmd:?}: {}", String::from_utf8_lossy(&out.stderr));
        let (header, rows) = csv_rows(&out.stdout);
        assert!(!rows.is_empty() && rows.iter().all(|r| r.len() == header.len()), "{cmd:?}");
        for (i, h) in header.iter().enumerate() {
            if let Some(stem) = h.strip_suffix("_re") {
                assert_eq!(header[i + 1], format!("{stem}_im"));
            }
        }
        let mut json_args = args.clone();
        json_args.extend(["--json", "--tol", "1e-10"]);
        let v = stdout_json(&cavity(&json_args));
        assert_eq!(v["manifest"]["command"], cmd[0].as_str());
        assert_eq!(v["manifest"]["tolerances"]["tol"].as_f64(), Some(1e-10));
        let first = v["tables"].as_object().unwrap().values().next().unwrap().as_array().unwrap();
        assert_eq!(first.len(), rows.len());
        let keys: Vec<&String> = first[0].as_object().unwrap().keys().collect();
        assert_eq!(keys, header.iter().collect::<Vec<_>>());
    }
}

#[test]
fn outputs_are_deterministic_and_checksummed() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_profile(dir.path(), "p.json", r#"{"segments":[{"duration_over_L":0.7,"hL":0.03},{"duration_over_L":0.2,"hL":-0.01}]}"#);
    for cmd in every_command(&p) {
        let mut runs = Vec::new();
        for k in 0..2 {
            let out_dir = dir.path().join(format!("{}-{k}", cmd[0]));
            let mut args: Vec<&str> = cmd.iter().map(String::as_str).collect();
            args.extend(["--out-dir", out_dir.to_str().unwrap()]);
            let out = cavity(&args);
            assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
            runs.push((out.stdout, out_dir));
        }
        assert_eq!(runs[0].0, runs[1].0, "{cmd:?} stdout differs");
        let manifest: Value = serde_json::from_slice(&std::fs::read(runs[0].1.join("manifest.json")).unwrap()).unwrap();
        assert_eq!(
            manifest,
            stdout_json(&Output { status: std::process::ExitStatus::default(), stdout: runs[0].0.clone(), stderr: vec![] })["manifest"]
        );
        assert!(manifest["params"][&cmd[0]].is_object());
        assert!(manifest["params"][&cmd[0]].get("output").is_none());
        for o in manifest["outputs"].as_array().unwrap() {
            let name = o["name"].as_str().unwrap();
            let (a, b) = (std::fs::read(runs[0].1.join(name)).unwrap(), std::fs::read(runs[1].1.join(name)).unwrap());
            assert_eq!(a, b, "{name} differs between runs");
            assert_eq!(o["sha256"].as_str().unwrap(), sha256_hex(&a));
            assert_eq!(o["bytes"].as_u64().unwrap() as usize, a.len());
        }
    }
}

#[test]
fn unitarity_scan_approaches_dirichlet_limit() {
    let r = report(&["unitarity", "--bc", "dirichlet", "--scan", "10", "100", "10"]);
    let t = r.table("scan").unwrap();
    assert_eq!(t.rows.len(), 10);
    let limit = 1.0 / (90.0 * PI * PI);
    for i in 0..10 {
        assert!((float(t, i, "limit") - limit).abs() < 1e-18);
        assert!((float(t, i, "scaled_estimate") / limit - 1.0).abs() < 2e-3);
        assert!((float(t, i, "scaled") / limit - 1.0).abs() < 0.02);
    }
}

#[test]
fn unitarity_dirac_and_transverse_verdicts() {
    let r = report(&["unitarity", "--bc", "dirac", "--M", "50"]);
    let t = r.table("scan").unwrap();
    let limit = 7.0 / (45.0 * PI * PI) - 1.0 / 64.0;
    assert!((float(t, 0, "scaled") / limit - 1.0).abs() < 0.05);
    let r = report(&["unitarity", "--bc", "dirichlet", "--M", "10", "--transverse-dim", "3"]);
    assert_eq!(r.summary["transverse"]["verdict"], "DIVERGES(log)");
    assert!(r.table("transverse").unwrap().rows.len() >= 4);
    let r = report(&["unitarity", "--bc", "neumann", "--M", "10", "--transverse-dim", "2"]);
    assert_eq!(r.summary["transverse"]["verdict"], "CONVERGES");
    assert_eq!(r.summary["transverse"]["counting"], "positive");
}

#[test]
fn figure2_marks_parity_forbidden_pairs() {
    let r = report(&["figure2", "--points", "7", "--pairs", "0:1,0:-2,1:3,0:-3"]);
    let t = r.table("figure2").unwrap();
    assert_eq!(t.columns, ["M", "abs_A_0_1", "abs_A_0_-2", "abs_A_1_3", "abs_A_0_-3"]);
    for i in 0..t.rows.len() {
        assert_eq!(float(t, i, "abs_A_0_-2"), 0.0);
        assert_eq!(float(t, i, "abs_A_1_3"), 0.0);
        assert!(float(t, i, "abs_A_0_1") > 0.0);
    }
    let fits = r.summary["fits"].as_array().unwrap();
    assert!(fits[1]["parity_forbidden"].as_bool().unwrap() && fits[1]["slope"].is_null());
    assert_eq!(fits[3]["block"], "opposite-sign");
    assert!((float(t, 0, "M") - 10.0).abs() < 1e-12 && (float(t, 6, "M") - 100.0).abs() < 1e-12);
}

#[test]
fn asymptotics_table_matches_closed_forms() {
    let r = report(&["asymptotics"]);
    let t = &r.tables[0];
    let pi2 = PI * PI;
    for (i, limit) in [1.0 / (90.0 * pi2), 11.0 / (90.0 * pi2), 7.0 / (45.0 * pi2) - 1.0 / 64.0].into_iter().enumerate() {
        assert!((float(t, i, "value") / limit - 1.0).abs() < 1e-10);
    }
}
