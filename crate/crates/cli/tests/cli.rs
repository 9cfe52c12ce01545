mod common;

use std::path::Path;
use std::process::{Command, Output};

use bosezeno_cli::{run, Mode, RunConfig};
use bosezeno_core::meanfield::RelaxationConfig;

use common::{files_with_extension, validate};

fn bosezeno(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bosezeno"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_mode(mode: &str, config: Option<&str>, out: &Path, extra: &[&str]) -> Output {
    let dir = out.parent().expect("parent");
    let mut args = vec![mode.to_string(), "--out".into(), out.display().to_string()];
    if let Some(text) = config {
        let path = dir.join(format!("{mode}.ini"));
        std::fs::write(&path, text).unwrap();
        args.extend(["--config".into(), path.display().to_string()]);
    }
    args.extend(extra.iter().map(|s| s.to_string()));
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    bosezeno(&refs)
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn meanfield_grid_writes_nine_tables_and_one_overlay() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("mf");
    let config = "[relaxation]\ngamma_x = 0.01, 0.1, 1\n[grid]\nN = 1, 10, 100\nsamples = 200\n";
    let o = run_mode("meanfield", Some(config), &out, &[]);
    assert!(o.status.success(), "{}", stderr(&o));
    let csvs = files_with_extension(&out, "csv");
    assert_eq!(csvs.len(), 9);
    assert_eq!(files_with_extension(&out, "svg").len(), 1);
    for path in &csvs {
        let csv = validate(path);
        assert_eq!(csv.mode, Mode::Meanfield);
        assert_eq!(csv.rows.len(), 200);
        let jz = csv.column("jz");
        let n: f64 = csv.param("N").unwrap().parse().unwrap();
        assert_eq!(jz[0], -n / 2.0);
    }
    assert!(out.join("meanfield_N100_gx0.01_gz0.csv").exists());
}

#[test]
fn exact_rejects_eighty_bosons_with_the_capacity_code() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("ex");
    let o = run_mode("exact", Some("[grid]\nN = 80\n"), &out, &[]);
    assert_eq!(o.status.code(), Some(6), "{}", stderr(&o));
    assert!(stderr(&o).contains("64"));
    assert!(files_with_extension(&out, "csv").is_empty());
}

#[test]
fn exact_tables_carry_purity() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("ex");
    let config = "[relaxation]\ngamma_x = 0.1\ngamma_z = 0, 0.5\n[grid]\nN = 1, 3\nsamples = 50\n";
    let o = run_mode("exact", Some(config), &out, &[]);
    assert!(o.status.success(), "{}", stderr(&o));
    let csvs = files_with_extension(&out, "csv");
    assert_eq!(csvs.len(), 4);
    for path in &csvs {
        let csv = validate(path);
        let purity = csv.column("purity");
        assert_eq!(purity[0], 1.0);
        assert!(purity.iter().all(|&p| p > 0.0 && p <= 1.0 + 1e-12));
    }
}

#[test]
fn default_runs_emit_valid_tables() {
    let tmp = tempfile::tempdir().unwrap();
    for (mode, files) in [("discrete", 3), ("readout", 1), ("sweep", 1)] {
        let out = tmp.path().join(mode);
        let o = run_mode(mode, None, &out, &[]);
        assert!(o.status.success(), "{mode}: {}", stderr(&o));
        let csvs = files_with_extension(&out, "csv");
        assert_eq!(csvs.len(), files, "{mode}");
        for path in &csvs {
            validate(path);
        }
        assert_eq!(files_with_extension(&out, "svg").len(), 1);
    }
    let readout = validate(&tmp.path().join("readout/readout.csv"));
    let p = readout.column("required_p");
    assert!(p.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn tmin_defaults_match_the_module_certificates() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("tmin");
    let o = run_mode("tmin", None, &out, &[]);
    assert!(o.status.success(), "{}", stderr(&o));
    let stdout = String::from_utf8_lossy(&o.stdout);
    let summary = stdout
        .lines()
        .find(|l| l.starts_with("slope = "))
        .expect("summary line");
    assert!(summary.contains("+/-"));
    let saved = std::fs::read_to_string(out.join("tmin_summary.txt")).unwrap();
    assert_eq!(saved.trim_end(), summary);
    assert!(out.join("tmin.svg").exists());

    let csv = validate(&out.join("tmin.csv"));
    let bosons = csv.column("N");
    let t_min = csv.column("T_min");
    let (lo, hi, req) = (
        csv.column("certificate_lo"),
        csv.column("certificate_hi"),
        csv.column("required_p"),
    );
    let config = RunConfig::defaults(Mode::Tmin);
    let search = config.tmin_search();
    let relax = RelaxationConfig::new(0.1, 0.0).unwrap();
    for i in 0..bosons.len() {
        assert!(lo[i] < req[i] && req[i] <= hi[i], "row {i}");
        assert_eq!(csv.rows[i][6], "bisection");
        let entry = search
            .solve(
                bosons[i] as u32,
                &relax,
                &config.schedule(),
                config.target_pe,
            )
            .unwrap();
        assert_eq!(entry.t_min, t_min[i]);
        assert_eq!(entry.certificate_lo, lo[i]);
        assert!(entry.certificate_holds());
    }
    // cross-check against the exact oracle only up to N = 20
    assert!(!csv.rows[0][7].is_empty());
    assert!(csv.rows[1][7].is_empty());
}

#[test]
fn tmin_with_too_few_points_fails_the_fit() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("tmin");
    let o = run_mode("tmin", Some("[grid]\nN = 10, 100, 1000\n"), &out, &[]);
    assert_eq!(o.status.code(), Some(8), "{}", stderr(&o));
    // the table is still written before the fit is attempted
    validate(&out.join("tmin.csv"));
}

#[test]
fn config_errors_are_reported_together() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("bad");
    let config = "[schedule]\ndelta = 0\n[relaxation]\ngamma_x = -1\nfoo = 3\n";
    let o = run_mode("meanfield", Some(config), &out, &[]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(
        err.contains("line 2") && err.contains("schedule.delta") && err.contains("kappa diverges"),
        "{err}"
    );
    assert!(
        err.contains("relaxation.gamma_x") && err.contains("relaxation.foo"),
        "{err}"
    );
    assert!(!out.exists());
}

#[test]
fn missing_config_file_is_an_io_error() {
    let o = bosezeno(&["readout", "--config", "/nonexistent/bosezeno.ini"]);
    assert_eq!(o.status.code(), Some(9));
}

#[test]
fn mode_mismatch_is_rejected() {
    let tmp = tempfile::tempdir().unwrap();
    let o = run_mode(
        "readout",
        Some("[run]\nmode = tmin\n"),
        &tmp.path().join("r"),
        &[],
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn outputs_do_not_depend_on_workers_or_location() {
    let tmp = tempfile::tempdir().unwrap();
    let config = "[relaxation]\ngamma_x = 0.05, 0.5\ngamma_z = 0, 0.2\n[grid]\nN = 1, 7, 40\nsamples = 100\n";
    let a = tmp.path().join("a");
    let b = tmp.path().join("b");
    assert!(run_mode("meanfield", Some(config), &a, &["--workers", "1"])
        .status
        .success());
    assert!(run_mode(
        "meanfield",
        Some(config),
        &b,
        &["--workers", "3", "--seedless"]
    )
    .status
    .success());
    let (fa, fb) = (
        files_with_extension(&a, "csv"),
        files_with_extension(&b, "csv"),
    );
    assert_eq!(fa.len(), 12);
    for (x, y) in fa.iter().zip(&fb) {
        assert_eq!(x.file_name(), y.file_name());
        assert_eq!(
            std::fs::read(x).unwrap(),
            std::fs::read(y).unwrap(),
            "{}",
            x.display()
        );
    }
    assert_eq!(
        std::fs::read(a.join("meanfield.svg")).unwrap(),
        std::fs::read(b.join("meanfield.svg")).unwrap()
    );
}

#[test]
fn zero_workers_is_a_usage_error() {
    let o = bosezeno(&["readout", "--workers", "0"]);
    assert!(!o.status.success());
}

#[test]
fn library_run_reports_files_in_grid_order() {
    let tmp = tempfile::tempdir().unwrap();
    let mut config = RunConfig::defaults(Mode::Sweep);
    config.gamma_x = vec![0.01, 1.0];
    config.bosons = vec![5, 1];
    config.output_dir = tmp.path().to_path_buf();
    let report = run(&config).unwrap();
    assert_eq!(
        report.files,
        vec![tmp.path().join("sweep.csv"), tmp.path().join("sweep.svg")]
    );
    let csv = validate(&report.files[0]);
    assert_eq!(csv.column("N"), vec![5.0, 5.0, 1.0, 1.0]);
    assert_eq!(csv.column("gamma_x"), vec![0.01, 1.0, 0.01, 1.0]);
}

#[test]
fn documented_example_config_parses() {
    let doc = include_str!("../../../docs/formats.md");
    let block = doc
        .split("```ini\n")
        .nth(1)
        .and_then(|rest| rest.split("```").next())
        .expect("ini block in docs/formats.md");
    let config = bosezeno_cli::parse_config(block, Mode::Meanfield).unwrap();
    assert_eq!(config.gamma_x, vec![0.01, 0.1, 1.0]);
    assert_eq!(
        config.measurements,
        vec![1_000, 10_000, 100_000, 1_000_000, 10_000_000]
    );
    assert_eq!(config.output_dir, std::path::PathBuf::from("out"));
}
