use std::path::Path;
use std::process::{Command, Output};

use remsim::chemdata::builtin;
use remsim::experiments::{DISSOCIATION_HEADER, NOISE_SWEEP_HEADER};
use remsim::mitigation::ConfusionMatrix;

fn remsim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_remsim")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "exit {:?}: {}", o.status.code(), String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn config_errors_exit_2() {
    let cases: [&[&str]; 5] = [
        &["single-point", "--mitigation", "rem", "--reference", "none"],
        &["single-point", "--shots", "100"],
        &["single-point", "--backend", "noisy", "--p2", "1.5"],
        &["single-point", "--molecule", "water"],
        &["noise-sweep", "--p2", "0.01"],
    ];
    for args in cases {
        let o = remsim(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
    }
}

#[test]
fn dissociation_csv_is_byte_identical_for_a_seed() {
    let args = [
        "dissociation",
        "--backend",
        "noisy",
        "--shots",
        "2000",
        "--seed",
        "11",
        "--mitigation",
        "readout+rem",
        "--confusion",
        "figure-s2",
    ];
    let a = stdout(&remsim(&args));
    let b = stdout(&remsim(&args));
    assert_eq!(a, b);
    let mut other = args;
    other[6] = "12";
    assert_ne!(a, stdout(&remsim(&other)));
}

#[test]
fn csv_headers_and_precision() {
    let d = stdout(&remsim(&["dissociation", "--molecule", "heh+"]));
    let mut lines = d.lines();
    assert_eq!(lines.next(), Some(DISSOCIATION_HEADER));
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first.len(), 8);
    assert_eq!(first[1].split('.').nth(1).unwrap().len(), 6);

    let s = stdout(&remsim(&["noise-sweep", "--mitigation", "rem", "--p2-grid", "1e-3,1e-2"]));
    let lines: Vec<&str> = s.lines().collect();
    assert_eq!(lines[0], NOISE_SWEEP_HEADER);
    assert_eq!(lines.len(), 3);
}

#[test]
fn svg_does_not_change_csv() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("curve.svg");
    let base = ["dissociation", "--backend", "noisy", "--mitigation", "rem", "--seed", "4"];
    let plain = stdout(&remsim(&base));
    let mut with_svg = base.to_vec();
    with_svg.extend(["--svg", path(&svg)]);
    assert_eq!(plain, stdout(&remsim(&with_svg)));
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));

    let sweep = ["noise-sweep", "--mitigation", "rem", "--p2-grid", "1e-3,1e-2,5e-2"];
    let plain = stdout(&remsim(&sweep));
    let mut with_svg = sweep.to_vec();
    with_svg.extend(["--svg", path(&svg)]);
    assert_eq!(plain, stdout(&remsim(&with_svg)));
}

#[test]
fn out_flag_writes_the_same_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("d.csv");
    let printed = stdout(&remsim(&["dissociation"]));
    let o = remsim(&["dissociation", "--out", path(&out)]);
    assert!(stdout(&o).is_empty());
    assert_eq!(std::fs::read_to_string(&out).unwrap(), printed);
}

#[test]
fn calibrate_ideal_backend_is_identity() {
    let c = ConfusionMatrix::parse_csv(&stdout(&remsim(&["calibrate"]))).unwrap();
    assert_eq!(c.entries(), ConfusionMatrix::identity(2).entries());
}

#[test]
fn calibrate_figure_s2_within_three_sigma() {
    let text = stdout(&remsim(&["calibrate", "--backend", "noisy", "--confusion", "figure-s2", "--seed", "3"]));
    let c = ConfusionMatrix::parse_csv(&text).unwrap();
    let truth = ConfusionMatrix::figure_s2();
    let sigma = c.uncertainty().unwrap();
    for ((est, t), s) in c.entries().iter().zip(truth.entries()).zip(sigma) {
        assert!((est - t).abs() <= 3.0 * s + 1e-12, "{est} vs {t} ± {s}");
    }
}

#[test]
fn calibrate_with_few_shots_reports_wide_uncertainty() {
    let text = stdout(&remsim(&["calibrate", "--backend", "noisy", "--confusion", "figure-s2", "--cal-shots", "10"]));
    let c = ConfusionMatrix::parse_csv(&text).unwrap();
    let widest = c.uncertainty().unwrap().iter().copied().fold(0.0, f64::max);
    assert!(widest > 0.03, "{widest}");
}

#[test]
fn calibrated_file_feeds_back_as_confusion_source() {
    let dir = tempfile::tempdir().unwrap();
    let cal = dir.path().join("cal.csv");
    stdout(&remsim(&["calibrate", "--backend", "noisy", "--confusion", "figure-s2", "--out", path(&cal)]));
    let o = remsim(&["single-point", "--backend", "noisy", "--mitigation", "readout+rem", "--confusion", path(&cal)]);
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(report["point"]["e_readout_rem"].is_number());
}

#[test]
fn file_hamiltonian_ideal_has_zero_rem_shift() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("h2.txt");
    let ds = builtin("h2").unwrap();
    let h = &ds.geometry(0.7414).unwrap().hamiltonian;
    std::fs::write(&file, h.to_text()).unwrap();
    let o = remsim(&["single-point", "--hamiltonian", path(&file), "--mitigation", "rem"]);
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["rem"]["delta_rem"].as_f64(), Some(0.0));
    let (ground, _) = h.ground_state_energy().unwrap();
    assert!((report["rem"]["e_rem"].as_f64().unwrap() - ground).abs() < 1e-9);
}

#[test]
fn single_point_noisy_rem_improves() {
    let o = remsim(&["single-point", "--backend", "noisy", "--mitigation", "rem", "--seed", "1"]);
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rem = &report["rem"];
    assert!(rem["err_rem"].as_f64().unwrap().abs() < rem["err_vqe"].as_f64().unwrap().abs());
}
