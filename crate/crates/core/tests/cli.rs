//! End-to-end runs of the `vlc-udn` binary.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_vlc-udn"))
}

fn write_config(dir: &Path, body: &str) -> std::path::PathBuf {
    let path = dir.join("exp.toml");
    fs::write(&path, body).unwrap();
    path
}

const SMALL: &str = "[agent]\nmax_slots = 300\nepsilon_decay_slots = 100\n[experiment]\nue_density = 2\nruns = 4\nseed = 5\n";

fn ok(out: Output) -> Output {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    out
}

#[test]
fn simulate_writes_csv_and_metadata() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SMALL);
    let out = dir.path().join("out");
    ok(bin().args(["simulate", "--config"]).arg(&cfg).arg("--out").arg(&out).output().unwrap());

    let csv = fs::read_to_string(out.join("rpic_rho2.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "slot,utility,mean_rate_bps,energy_w,ici_w");
    assert_eq!(lines.count(), 300);

    let meta: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("rpic_rho2.meta.json")).unwrap()).unwrap();
    assert_eq!(meta["seed"], 5);
    assert_eq!(meta["runs"], 4);
    assert_eq!(meta["config"]["agent"]["learning_rate"], 0.9);
    assert!(meta["build"].is_string());
    assert_eq!(meta["config_hash"].as_str().unwrap().len(), 64);
}

#[test]
fn simulate_is_byte_reproducible_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SMALL);
    let run = |name: &str| {
        let out = dir.path().join(name);
        ok(bin()
            .args(["simulate", "--config"])
            .arg(&cfg)
            .args(["--runs", "3", "--seed", "99", "--policy", "fixed_half", "--density", "1", "--out"])
            .arg(&out)
            .output()
            .unwrap());
        fs::read(out.join("fixed_half_rho1.csv")).unwrap()
    };
    assert_eq!(run("a"), run("b"));
}

#[test]
fn raw_runs_trajectories_and_qtable() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SMALL);
    let out = dir.path().join("out");
    let q = dir.path().join("q.tsv");
    ok(bin()
        .args(["simulate", "--raw-runs", "--trajectories", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&out)
        .arg("--export-q")
        .arg(&q)
        .output()
        .unwrap());
    assert_eq!(fs::read_dir(out.join("runs")).unwrap().count(), 4);
    let traj = fs::read_to_string(out.join("trajectories.csv")).unwrap();
    assert!(traj.starts_with("slot,ue_id,x,y\n"));
    assert_eq!(traj.lines().count(), 1 + 300 * 2);

    let qtext = fs::read_to_string(&q).unwrap();
    assert!(qtext.starts_with("# rate_bins=4 gain_bins=4 zeta_cap=10000000 action_count=36\n"));
    let inspect = ok(bin().args(["inspect-q", "--qtable"]).arg(&q).output().unwrap());
    let text = String::from_utf8(inspect.stdout).unwrap();
    assert!(text.contains("actions per state: 36"), "{text}");

    // Warm start from the exported table.
    ok(bin()
        .args(["simulate", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(dir.path().join("warm"))
        .arg("--warm-start")
        .arg(&q)
        .output()
        .unwrap());
}

#[test]
fn sweep_writes_one_csv_per_density() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SMALL);
    let out = dir.path().join("sweep");
    ok(bin().args(["sweep", "--densities", "1,2,3", "--config"]).arg(&cfg).arg("--out").arg(&out).output().unwrap());
    for d in 1..=3 {
        assert!(out.join(format!("rpic_rho{d}.csv")).exists());
        assert!(out.join(format!("rpic_rho{d}.meta.json")).exists());
    }
}

#[test]
fn config_errors_exit_with_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "[agent]\nbogus_key = 1\n");
    let out = bin().args(["simulate", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = bin().args(["simulate", "--config"]).arg(dir.path().join("missing.toml")).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    let cfg = write_config(dir.path(), SMALL);
    let out = bin().args(["simulate", "--policy", "bi-son", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = bin().args(["sweep", "--densities", "1,9", "--config"]).arg(&cfg).arg("--out").arg(dir.path()).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn non_finite_utility_exits_with_3() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), &format!("{SMALL}[link]\ntotal_bandwidth_hz = 1.7e308\neffective_bandwidth_factor = 1.0\nnoise_psd_a2_per_hz = 1e-320\n"));
    let out = bin().args(["simulate", "--policy", "fixed_max", "--config"]).arg(&cfg).arg("--out").arg(dir.path()).output().unwrap();
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn shipped_configs_parse() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs");
    let shipped = vlc_udn::harness::ExperimentConfig::from_file(root.join("default.toml")).unwrap();
    assert_eq!(shipped, vlc_udn::harness::ExperimentConfig::default());
    vlc_udn::harness::ExperimentConfig::from_file(root.join("quick.toml")).unwrap();
}
