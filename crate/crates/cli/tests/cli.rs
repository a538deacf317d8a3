use std::io::Write;
use std::process::{Command, Output};

use casimir_core::materials::{SyntheticSpectrum, AU_DRUDE};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_casimir-iso"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn casimir-iso")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Header line and numeric rows of a CSV, comment lines skipped.
fn table(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

#[test]
fn permittivity_gold_grid() {
    let out = run(&["permittivity", "--material", "Au", "--xi-start", "0.01", "--xi-stop", "10", "--xi-points", "50"]);
    assert!(out.status.success());
    let (header, rows) = table(&stdout(&out));
    assert_eq!(header, ["xi_eV", "eps_drude", "eps_plasma"]);
    assert_eq!(rows.len(), 50);
    assert!(rows.iter().all(|r| r[1] >= 1.0 && r[2] >= 1.0));
}

#[test]
fn permittivity_at_first_matsubara_energy() {
    let out = run(&["permittivity", "--xi-start", "0.16244", "--xi-stop", "1", "--xi-points", "2"]);
    let (_, rows) = table(&stdout(&out));
    assert!((rows[0][1] - 2471.0).abs() < 1.0, "{}", rows[0][1]);
    assert!((rows[0][2] - 3003.0).abs() < 1.0, "{}", rows[0][2]);
}

#[test]
fn permittivity_with_table_tracks_analytic_drude() {
    let table_text = SyntheticSpectrum::drude(AU_DRUDE)
        .table(0.01, 100.0, 500)
        .unwrap()
        .to_text();
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(table_text.as_bytes()).unwrap();
    let path = file.path().to_str().unwrap();
    let out = run(&["permittivity", "--table", path, "--xi-start", "0.16", "--xi-stop", "10", "--xi-points", "12"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let (header, rows) = table(&stdout(&out));
    assert_eq!(header.last().unwrap(), "eps_tabulated");
    for r in rows {
        assert!(((r[3] - r[1]) / r[1]).abs() < 5e-3, "{r:?}");
    }
}

#[test]
fn bad_inputs_exit_with_one() {
    let out = run(&["permittivity", "--material", "kryptonite"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("kryptonite"));

    let out = run(&["permittivity", "--table", "/nonexistent/table.txt"]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["delta", "--a-start", "3", "--a-stop", "1"]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["delta", "--setup", "fig99"]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(1));

    let mut cfg = tempfile::NamedTempFile::new().unwrap();
    writeln!(cfg, "[grid]\na_points = many").unwrap();
    let out = run(&["delta", "--config", cfg.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn convergence_failure_exits_with_two() {
    let out = run(&["eta", "--a-start", "0.01", "--a-stop", "0.02", "--a-points", "2", "--l-max-cap", "10"]);
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
}

#[test]
fn eta_gold_ordering_and_attribution() {
    let out = run(&["eta", "--a-start", "0.5", "--a-stop", "5", "--a-points", "10"]);
    assert!(out.status.success());
    let (header, rows) = table(&stdout(&out));
    assert_eq!(header, ["a_um", "eta_drude", "eta_plasma", "eta_plasma_noTE0"]);
    assert_eq!(rows.len(), 10);
    for r in &rows {
        assert!(r[2] > r[1], "{r:?}");
        assert!(((r[3] - r[1]) / r[1]).abs() < 0.05, "{r:?}");
        assert!(r[1] > 0.0 && r[2] > 0.0 && r[3] > 0.0);
    }
    // Below the thermal length the T = 0 ideal energy bounds |F|.
    for r in rows.iter().filter(|r| r[0] <= 1.0) {
        assert!(r[1] < 1.0 && r[2] < 1.0, "{r:?}");
    }
}

#[test]
fn delta_fig3_column_order_and_magnitudes() {
    let out = run(&["delta", "--setup", "fig3", "--a-start", "2", "--a-stop", "5", "--a-points", "4"]);
    assert!(out.status.success());
    let (header, rows) = table(&stdout(&out));
    assert_eq!(
        header,
        ["a_um", "dF_fN_drude_mu1", "dF_fN_drude_muFull", "dF_fN_plasma_mu1", "dF_fN_plasma_muFull"]
    );
    for r in rows {
        assert!(r[3].abs() > r[1].abs(), "{r:?}");
        assert!(r[4].abs() > r[2].abs(), "{r:?}");
    }
}

#[test]
fn delta_single_combination() {
    let out = run(&["delta", "--setup", "fig7", "--prescription", "plasma", "--mu", "unity", "--a-start", "1", "--a-stop", "3", "--a-points", "3"]);
    let (header, rows) = table(&stdout(&out));
    assert_eq!(header, ["a_um", "dF_fN_plasma_mu1"]);
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[2][0], 3.0);
}

#[test]
fn delta_magnetic_amplification() {
    let out = run(&["delta", "--setup", "fig4_5", "--mu", "full", "--a-start", "0.3", "--a-stop", "0.4", "--a-points", "2"]);
    let (_, rows) = table(&stdout(&out));
    let ratio = (rows[0][1] / rows[0][2]).abs();
    assert!(ratio >= 300.0, "{ratio}");
}

#[test]
fn inline_setup_with_identical_regions_is_exactly_zero() {
    let mut cfg = tempfile::NamedTempFile::new().unwrap();
    write!(
        cfg,
        "[setup]\nname = same\nradius = 150\ncoating = Ni\noverlayer = Au\nthickness = 0.08\n\
         substrate_b = Ni\nsubstrate_c = Ni\ntemperature = 300\n\n[grid]\na_start = 0.3\na_stop = 1\na_points = 3\n"
    )
    .unwrap();
    let out = run(&["delta", "--config", cfg.path().to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let (header, rows) = table(&stdout(&out));
    assert_eq!(header.len(), 5);
    for r in rows {
        assert!(r[1..].iter().all(|&x| x == 0.0), "{r:?}");
    }
}

#[test]
fn output_is_deterministic_and_header_replays() {
    let args = ["delta", "--setup", "fig6", "--a-start", "0.5", "--a-stop", "2", "--a-points", "5", "--a-scale", "log"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.stdout, second.stdout);
    let text = stdout(&first);
    assert!(!text.contains('\r'));
    assert!(text.starts_with("# command = delta\n"));

    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("delta.csv");
    let mut with_out = args.to_vec();
    with_out.extend(["--out", out_path.to_str().unwrap()]);
    let written = run(&with_out);
    assert!(written.status.success());
    assert!(written.stdout.is_empty());
    let file_text = std::fs::read_to_string(&out_path).unwrap();
    let strip = |t: &str| t.lines().filter(|l| !l.starts_with('#')).collect::<Vec<_>>().join("\n");
    assert_eq!(strip(&file_text), strip(&text));

    // The comment header is itself a valid config reproducing the run.
    let config: String = text
        .lines()
        .filter_map(|l| l.strip_prefix("# "))
        .map(|l| format!("{l}\n"))
        .collect();
    let cfg_path = dir.path().join("replay.cfg");
    std::fs::write(&cfg_path, config).unwrap();
    let replay = run(&["delta", "--config", cfg_path.to_str().unwrap()]);
    assert_eq!(replay.stdout, first.stdout);
}

#[test]
fn validate_report_matches_registry() {
    let out = run(&["validate"]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), casimir_iso::validate::registry().len());
    for l in &lines {
        let fields: Vec<&str> = l.split(' ').collect();
        assert!(fields.len() >= 4, "{l}");
        assert!(fields[1] == "PASS" || fields[1] == "FAIL", "{l}");
    }
    let any_failed = lines.iter().any(|l| l.split(' ').nth(1) == Some("FAIL"));
    assert_eq!(out.status.code(), Some(if any_failed { 3 } else { 0 }));
}

#[test]
fn validate_with_loose_tolerance_fails_convergence_checks() {
    let out = run(&["validate", "--rel-tol", "1e-2"]);
    assert_eq!(out.status.code(), Some(3));
    let text = stdout(&out);
    for id in ["convergence_halving", "matsubara_tail", "ideal_mirror_t0"] {
        let line = text.lines().find(|l| l.starts_with(&format!("{id} "))).unwrap();
        assert!(line.contains(" FAIL "), "{line}");
    }
}

#[test]
fn help_exits_cleanly() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("validate"));
}
