//! End-to-end checks of the file formats, configuration handling, and the
//! binary's subcommands.

use std::path::{Path, PathBuf};
use std::process::Command;
use tht_cli::config::{ExperimentConfig, SolverKind};
use tht_cli::{commands, experiment, formats};
use tht_core::phantoms::{PhantomFamily, PhantomSpec};
use tht_core::series::{synth_source, ChebCoeffs, Grid};

fn tmp_dir(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join(name);
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tht"))
}

#[test]
fn forward_then_invert_round_trips_through_files() {
    let dir = tmp_dir("roundtrip");
    let n = 64;
    let mut coeffs: Vec<f64> = (1..=n).map(|k| 1.0 / (k * k) as f64).collect();
    coeffs[n - 1] = 0.0;
    let c = ChebCoeffs::new(coeffs).unwrap();
    let f = synth_source(&c, &Grid::cgl_nodes(n).unwrap()).unwrap();
    let f_path = dir.join("f.txt");
    formats::write_samples(&f_path, &f).unwrap();

    let fwd_path = dir.join("fwd.txt");
    let back_path = dir.join("back.txt");
    commands::forward(&f_path, &fwd_path).unwrap();
    commands::invert(&fwd_path, &back_path).unwrap();

    let back = formats::read_samples(&back_path).unwrap();
    for (a, b) in back.values().iter().zip(f.values()) {
        assert!((a - b).abs() < 1e-9);
    }
}

#[test]
fn validate_passes_clean_pairs_and_fails_corrupted_ones() {
    let dir = tmp_dir("validate");
    let spec = PhantomSpec {
        family: PhantomFamily::SemicircleUnit,
        noise: None,
    };
    commands::phantom(&spec, 64, 0.0, 0, &dir).unwrap();
    let source = dir.join("source_samples.txt");
    let transform = dir.join("transform_samples.txt");

    let clean = commands::validate(&source, &transform).unwrap();
    assert!(clean < 1e-6, "clean pair deviation {clean}");

    // corrupt a transform value at a probed abscissa (the validator probes
    // m = k n / 12 + n / 24; take k = 6) and expect the deviation to blow up
    let probed = (6 * 64) / 12 + 64 / 24;
    let mut lines: Vec<String> = std::fs::read_to_string(&transform)
        .unwrap()
        .lines()
        .map(String::from)
        .collect();
    let fields: Vec<&str> = lines[probed + 1].split(',').collect();
    lines[probed + 1] = format!("{},{},{}", fields[0], fields[1], 5.0);
    let corrupted = dir.join("corrupted.txt");
    std::fs::write(&corrupted, lines.join("\n")).unwrap();
    let bad = commands::validate(&source, &corrupted).unwrap();
    assert!(bad > 1e-3, "corruption went unnoticed: {bad}");
}

#[test]
fn validate_subcommand_exit_codes() {
    let dir = tmp_dir("validate_exit");
    let out = bin()
        .args(["phantom", "--family", "semicircle_unit", "--n", "64"])
        .args(["--out", dir.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    let source = dir.join("source_samples.txt");
    let transform = dir.join("transform_samples.txt");
    let ok = bin()
        .args([
            "validate",
            source.to_str().unwrap(),
            transform.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(ok.status.success());

    // negative control: corrupt a probed row and expect a nonzero exit
    let probed = (6 * 64) / 12 + 64 / 24;
    let mut lines: Vec<String> = std::fs::read_to_string(&transform)
        .unwrap()
        .lines()
        .map(String::from)
        .collect();
    let fields: Vec<&str> = lines[probed + 1].split(',').collect();
    lines[probed + 1] = format!("{},{},{}", fields[0], fields[1], -7.0);
    let corrupted = dir.join("corrupted.txt");
    std::fs::write(&corrupted, lines.join("\n")).unwrap();
    let bad = bin()
        .args([
            "validate",
            source.to_str().unwrap(),
            corrupted.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(!bad.status.success());
}

#[test]
fn malformed_input_reports_the_line() {
    let dir = tmp_dir("badline");
    let path = dir.join("bad.txt");
    std::fs::write(&path, "# kind=CGL_NODE N=2 role=f_SIDE\n0,0.5,ok\n").unwrap();
    let err = format!("{:#}", formats::read_samples(&path).unwrap_err());
    assert!(err.contains(":2"), "{err}");
}

#[test]
fn identical_configs_give_byte_identical_outputs() {
    let dir_a = tmp_dir("det_a");
    let mut cfg = ExperimentConfig {
        n: 64,
        f_start: 16,
        f_end: 48,
        transform_start: 8,
        transform_end: 56,
        iters: 10,
        sigma: 0.01,
        seed: 9,
        out_dir: dir_a.clone(),
        ..Default::default()
    };
    experiment::run_experiment(&cfg).unwrap();
    let read_all = |dir: &Path| -> Vec<(String, String)> {
        let mut entries: Vec<_> = std::fs::read_dir(dir)
            .unwrap()
            .map(|e| e.unwrap().path())
            .collect();
        entries.sort();
        entries
            .into_iter()
            .map(|p| {
                (
                    p.file_name().unwrap().to_string_lossy().into_owned(),
                    std::fs::read_to_string(p).unwrap(),
                )
            })
            .collect()
    };
    let first = read_all(&dir_a);
    experiment::run_experiment(&cfg).unwrap();
    assert_eq!(first, read_all(&dir_a));

    // a manifest is a valid config and reproduces its run
    let manifest = dir_a.join("manifest.txt");
    let reloaded = ExperimentConfig::parse(&std::fs::read_to_string(&manifest).unwrap()).unwrap();
    let dir_b = tmp_dir("det_b");
    cfg = ExperimentConfig {
        out_dir: dir_b.clone(),
        ..reloaded
    };
    experiment::run_experiment(&cfg).unwrap();
    for name in [
        "report.txt",
        "source_estimate.txt",
        "source_truth.txt",
        "transform_estimate.txt",
        "transform_truth.txt",
    ] {
        let a = std::fs::read_to_string(dir_a.join(name)).unwrap();
        let b = std::fs::read_to_string(dir_b.join(name)).unwrap();
        assert_eq!(a, b, "{name} differs after manifest reload");
    }
}

#[test]
fn full_mask_estimate_equals_truth_columns() {
    let dir = tmp_dir("fullmask");
    let cfg = ExperimentConfig {
        n: 64,
        f_start: 0,
        f_end: 64,
        transform_start: 0,
        transform_end: 64,
        iters: 5,
        out_dir: dir.clone(),
        ..Default::default()
    };
    experiment::run_experiment(&cfg).unwrap();
    let truth = formats::read_samples(&dir.join("source_truth.txt")).unwrap();
    let estimate = formats::read_samples(&dir.join("source_estimate.txt")).unwrap();
    for (t, e) in truth.values().iter().zip(estimate.values()) {
        assert!((t - e).abs() < 1e-9);
    }
    let truth = formats::read_samples(&dir.join("transform_truth.txt")).unwrap();
    let estimate = formats::read_samples(&dir.join("transform_estimate.txt")).unwrap();
    for (t, e) in truth.values().iter().zip(estimate.values()) {
        assert!((t - e).abs() < 1e-9);
    }
}

#[test]
fn solver_degeneracy_surfaces_in_the_experiment_error() {
    let dir = tmp_dir("degenerate");
    let cfg = ExperimentConfig {
        solver: SolverKind::Minimize,
        n: 64,
        f_start: 30,
        f_end: 31,
        transform_start: 30,
        transform_end: 31,
        order: 8,
        ridge: 0.0,
        out_dir: dir,
        ..Default::default()
    };
    let err = format!("{:#}", experiment::run_experiment(&cfg).unwrap_err());
    assert!(err.contains("rank-deficient"), "{err}");
}

#[test]
fn lagrange_experiment_recovers_the_eps_phantom_inside_its_support() {
    // Inside its support the eps phantom's transform is exactly linear, so a
    // low-order interpolation recovers it and the display estimate matches
    // truth closely on the support.
    let dir = tmp_dir("lagrange_exp");
    let cfg = ExperimentConfig {
        solver: SolverKind::Lagrange,
        family: "semicircle_eps".into(),
        eps: 0.9,
        n: 64,
        f_start: 16,
        f_end: 48,
        transform_start: 8,
        transform_end: 56,
        order: 4,
        sample_lo: -0.5,
        sample_hi: 0.5,
        out_dir: dir,
        ..Default::default()
    };
    let summary = experiment::run_experiment(&cfg).unwrap();
    assert!(summary.report.data_residual[0] < 1e-10);
}
