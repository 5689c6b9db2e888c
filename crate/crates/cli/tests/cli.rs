//! End-to-end behavior of the workbench binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_landau-defects"))
}

fn write_config(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    binary().args(args).output().unwrap()
}

const FLAT: &str = "\
defect.variant = disclination
defect.alpha = 1.0
field.omega = 1.0
field.charge_sign = -1
quantum.n_max = 1
quantum.l_min = -1
quantum.l_max = 1
quantum.k = 0
";

#[test]
fn flat_spectrum_has_only_the_two_lowest_rungs() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(&dir, "flat.cfg", FLAT);
    let out = run(&["spectrum", "--config", config.to_str().unwrap()]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    let energies: Vec<&str> = stdout
        .lines()
        .skip(1)
        .map(|line| line.split(',').nth(10).unwrap())
        .collect();
    assert!(!energies.is_empty());
    for e in &energies {
        let value: f64 = e.parse().unwrap();
        assert!(value == 0.5 || value == 1.5, "unexpected energy {value}");
    }
}

#[test]
fn config_errors_carry_line_numbers_and_exit_code_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = FLAT.replace("defect.alpha = 1.0", "defect.alpha = 0");
    let config = write_config(&dir, "bad.cfg", &bad);
    let out = run(&["spectrum", "--config", config.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("line 2"), "{stderr}");
    assert!(stderr.contains("alpha > 0"), "{stderr}");
}

#[test]
fn seed_flag_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(&dir, "flat.cfg", FLAT);
    let out = run(&[
        "spectrum",
        "--config",
        config.to_str().unwrap(),
        "--seed",
        "7",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("deterministic"), "{stderr}");
}

#[test]
fn cancelling_flux_reproduces_the_defect_free_table() {
    let dir = tempfile::tempdir().unwrap();
    // flux = 2 pi * beta * k with beta = 0.5, k = 2
    let screw = "\
defect.variant = screw_dislocation
defect.beta = 0.5
defect.phi = 6.283185307179586
field.omega = 1.0
field.charge_sign = -1
quantum.n_max = 2
quantum.l_min = -3
quantum.l_max = 3
quantum.k = 2
";
    let free = "\
defect.variant = screw_dislocation
defect.beta = 0
defect.phi = 0
field.omega = 1.0
field.charge_sign = -1
quantum.n_max = 2
quantum.l_min = -3
quantum.l_max = 3
quantum.k = 2
";
    let a = run(&[
        "spectrum",
        "--config",
        write_config(&dir, "screw.cfg", screw).to_str().unwrap(),
    ]);
    let b = run(&[
        "spectrum",
        "--config",
        write_config(&dir, "free.cfg", free).to_str().unwrap(),
    ]);
    assert!(a.status.success() && b.status.success());
    let project = |raw: &[u8]| -> Vec<String> {
        String::from_utf8(raw.to_vec())
            .unwrap()
            .lines()
            .skip(1)
            // keep the state and energy columns, drop the defect parameters
            .map(|line| line.split(',').skip(6).collect::<Vec<_>>().join(","))
            .collect()
    };
    assert_eq!(project(&a.stdout), project(&b.stdout));
}

#[test]
fn torsion_splits_more_levels_than_curvature_alone() {
    let dir = tempfile::tempdir().unwrap();
    let with_torsion = "\
defect.variant = dispiration
defect.alpha = 0.5
defect.beta = 0.3
field.omega = 1.0
field.charge_sign = 1
quantum.n_max = 3
quantum.l_min = -3
quantum.l_max = 3
quantum.k = 1
";
    let without = with_torsion.replace("defect.beta = 0.3", "defect.beta = 0");
    let distinct = |raw: &[u8]| {
        let text = String::from_utf8(raw.to_vec()).unwrap();
        let mut energies: Vec<String> = text
            .lines()
            .skip(1)
            .map(|line| line.split(',').nth(10).unwrap().to_string())
            .collect();
        energies.sort();
        energies.dedup();
        energies.len()
    };
    let a = run(&[
        "spectrum",
        "--config",
        write_config(&dir, "disp.cfg", with_torsion)
            .to_str()
            .unwrap(),
    ]);
    let b = run(&[
        "spectrum",
        "--config",
        write_config(&dir, "noq.cfg", &without).to_str().unwrap(),
    ]);
    assert!(distinct(&a.stdout) > distinct(&b.stdout));
}

#[test]
fn verify_passes_on_the_default_grid_and_fails_on_a_coarse_one() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(&dir, "flat.cfg", FLAT);
    let out = run(&["verify", "--config", config.to_str().unwrap()]);
    assert!(out.status.success());
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("rows pass"), "{stderr}");

    let coarse = format!("{FLAT}oracle.n = 64\n");
    let config = write_config(&dir, "coarse.cfg", &coarse);
    let out = run(&["verify", "--config", config.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let table = String::from_utf8(out.stdout).unwrap();
    assert!(
        table.lines().skip(1).any(|l| l.ends_with("false")),
        "{table}"
    );
}

#[test]
fn kk_verify_reports_the_charge_shift_column() {
    let dir = tempfile::tempdir().unwrap();
    let kk = "\
defect.variant = kk_dispiration
defect.alpha = 0.7
defect.beta = 0.25
field.b0 = 1.0
quantum.n_max = 1
quantum.l_min = 0
quantum.l_max = 1
quantum.k = 1
quantum.q = 1.0
oracle.n = 1024
";
    let out = run(&[
        "verify",
        "--config",
        write_config(&dir, "kk.cfg", kk).to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let table = String::from_utf8(out.stdout).unwrap();
    assert!(table.starts_with("n,l,k,Q,q_shift,"));
    // Q^2 / 2 = 0.5 for Q = 1
    assert!(table
        .lines()
        .skip(1)
        .all(|l| l.split(',').nth(4).unwrap().starts_with("5.0")));
}

#[test]
fn wavefunction_header_and_emitted_norm() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(&dir, "flat.cfg", FLAT);
    let out = run(&[
        "wavefunction",
        "--config",
        config.to_str().unwrap(),
        "--n",
        "1",
        "--l",
        "0",
        "--samples",
        "1024",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert!(header.contains("nodes=1"), "{header}");
    assert_eq!(lines.next().unwrap(), "rho,R,density");

    // re-quadrature of the emitted density column by the trapezoid rule
    let rows: Vec<(f64, f64)> = lines
        .map(|line| {
            let mut cols = line.split(',');
            let rho: f64 = cols.next().unwrap().parse().unwrap();
            let density: f64 = cols.nth(1).unwrap().parse().unwrap();
            (rho, density)
        })
        .collect();
    let mut integral = 0.0;
    for pair in rows.windows(2) {
        integral += 0.5 * (pair[0].1 + pair[1].1) * (pair[1].0 - pair[0].0);
    }
    assert!(
        (integral - 1.0).abs() < 1e-3,
        "trapezoid integral {integral}"
    );
}

#[test]
fn out_of_range_state_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(&dir, "flat.cfg", FLAT);
    let out = run(&[
        "wavefunction",
        "--config",
        config.to_str().unwrap(),
        "--n",
        "7",
        "--l",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_emits_one_block_per_declared_value() {
    let dir = tempfile::tempdir().unwrap();
    let sweep = format!("{FLAT}sweep.parameter = defect.alpha\nsweep.values = 0.5, 1.0, 1.5\n");
    let config = write_config(&dir, "sweep.cfg", &sweep);
    let out = run(&["sweep", "--config", config.to_str().unwrap()]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let alphas: Vec<&str> = text
        .lines()
        .skip(1)
        .map(|line| line.split(',').nth(1).unwrap())
        .collect();
    let mut order: Vec<&str> = Vec::new();
    for alpha in alphas {
        if order.last() != Some(&alpha) {
            order.push(alpha);
        }
    }
    assert_eq!(order, vec!["0.5", "1", "1.5"]);
}

#[test]
fn json_output_parses_and_keeps_column_names() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(&dir, "flat.cfg", FLAT);
    let out = run(&[
        "spectrum",
        "--config",
        config.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let rows: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let first = &rows.as_array().unwrap()[0];
    for key in [
        "scenario",
        "alpha",
        "beta",
        "phi",
        "omega",
        "charge_sign",
        "n",
        "l",
        "k",
        "Q",
        "E",
        "E_over_omega",
        "nu",
        "cluster_id",
    ] {
        assert!(first.get(key).is_some(), "missing column {key}");
    }
    assert_eq!(first["E"].as_f64().unwrap(), 0.5);
}

#[test]
fn output_path_from_config_and_flag() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("table.csv");
    let config = write_config(&dir, "flat.cfg", FLAT);
    let out = run(&[
        "spectrum",
        "--config",
        config.to_str().unwrap(),
        "--output",
        target.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&target).unwrap();
    assert!(written.starts_with("scenario,alpha"));
}

#[test]
fn disk_exterior_equivalence_shows_in_the_table() {
    let dir = tempfile::tempdir().unwrap();
    let disk = "\
defect.variant = disclination_disk
defect.q = 1.0
defect.r = 1.0
field.omega = 1.0
field.charge_sign = -1
quantum.n_max = 1
quantum.l_min = -1
quantum.l_max = 1
quantum.k = 0
";
    let out = run(&[
        "spectrum",
        "--config",
        write_config(&dir, "disk.cfg", disk).to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    // the effective deficit parameter 1 + q r^2 / 2 shows up in the alpha column
    assert!(text
        .lines()
        .skip(1)
        .all(|l| l.starts_with("disclination_disk,1.5,")));
}
