use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn rweno(root: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rweno"))
        .args(args)
        .env("RWENO_OUTPUT_ROOT", root)
        .output()
        .expect("binary runs")
}

fn manifest(path: &Path) -> serde_json::Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn run_writes_profile_and_manifest() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("sod.cfg");
    fs::write(
        &cfg,
        "# short shock tube\nproblem = shu_osher\nproblem.n = 100\nproblem.t_end = 0.2\nscheme.weights = js\n",
    )
    .unwrap();
    let out = rweno(tmp.path(), &["run", cfg.to_str().unwrap(), "output.dir=out"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));

    let csv = fs::read_to_string(tmp.path().join("out/shu_osher_weno6-js_n100.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "x,rho,u,p");
    assert_eq!(lines.len(), 101);

    let m = manifest(&tmp.path().join("out/run_manifest.json"));
    assert_eq!(m["status"], "ok");
    assert_eq!(m["final_time"], 0.2);
    assert!(m["steps"].as_u64().unwrap() > 0);
    assert!(m["config"].as_str().unwrap().contains("output.dir = out"));

    // same inputs give byte-identical output
    let again = tempfile::tempdir().unwrap();
    let out = rweno(again.path(), &["run", cfg.to_str().unwrap(), "output.dir=out"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(csv, fs::read_to_string(again.path().join("out/shu_osher_weno6-js_n100.csv")).unwrap());
}

#[test]
fn bad_config_exits_with_config_code() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("bad.cfg");
    fs::write(&cfg, "problem = blast_wave\nscheme.kind = weno7\n").unwrap();
    let out = rweno(tmp.path(), &["run", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("scheme.kind"));
    let m = manifest(&tmp.path().join("run_manifest.json"));
    assert_eq!(m["failure"]["kind"], "config");

    let out = rweno(tmp.path(), &["run", tmp.path().join("missing.cfg").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn study_writes_convergence_table() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("adv.cfg");
    fs::write(
        &cfg,
        "problem = advect_sine\nproblem.t_end = 0.1\nstudy.schemes = linear, weno5-js\nstudy.resolutions = 20, 40\n",
    )
    .unwrap();
    let out = rweno(tmp.path(), &["study", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = fs::read_to_string(tmp.path().join("advect_sine/advect_sine_convergence.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "mesh,linear_L1,linear_order,weno5-js_L1,weno5-js_order");
    assert_eq!(lines.len(), 3);
    let row: Vec<&str> = lines[2].split(',').collect();
    let order: f64 = row[2].parse().unwrap();
    assert!(order > 4.0, "{csv}");
}
