use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_oscgauss"))
}

fn read_json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn lambda0_matches_the_critical_coupling() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("l0.json");
    let status = bin()
        .args(["lambda0", "--digits", "40", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let v = read_json(&out);
    assert_eq!(v["schema"], "oscgauss/1");
    let l0: f64 = v["lambda0"].as_str().unwrap().parse().unwrap();
    assert!((l0 - 1.325486839).abs() < 5e-10, "lambda0 = {l0}");
    assert!(v["h_residual"].as_f64().unwrap().abs() < 1e-30);
    // manifest written next to the artifact
    let manifest = read_json(&dir.path().join("l0.json.manifest.json"));
    assert_eq!(manifest["kind"], "manifest");
    assert_eq!(manifest["command"], "lambda0");
    assert!(manifest["library_version"].as_str().is_some());
    assert_eq!(manifest["config"]["digits"], 40);
}

#[test]
fn zeros_reproduce_the_figure_instance() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("zeros.json");
    let status = bin()
        .args(["zeros", "--n", "20", "--omega", "10", "--digits", "60", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let v = read_json(&out);
    assert_eq!(v["kind"], "zeros");
    let zs = v["zeros"].as_array().unwrap();
    assert_eq!(zs.len(), 20);
    // all zeros in the upper half of the unit-ish region near [-1,1]
    for z in zs {
        let re: f64 = z["re"].as_str().unwrap().parse().unwrap();
        let im: f64 = z["im"].as_str().unwrap().parse().unwrap();
        assert!(re.abs() < 1.01 && (0.0..0.5).contains(&im), "zero {re}+{im}i");
    }
}

#[test]
fn classify_prints_the_regime() {
    for (lam, want) in [("0.5", "SINGLE_ARC"), ("1.5", "TWO_ARC")] {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("c.json");
        let res = bin()
            .args(["classify", "--lambda", lam, "--out"])
            .arg(&out)
            .output()
            .unwrap();
        assert!(res.status.success());
        let stdout = String::from_utf8_lossy(&res.stdout);
        assert!(stdout.contains(want), "stdout: {stdout}");
        assert_eq!(read_json(&out)["regime"], want);
    }
}

#[test]
fn config_errors_exit_with_code_two() {
    // both couplings given
    let res = bin()
        .args([
            "zeros", "--n", "5", "--omega", "1", "--lambda", "0.5", "--digits", "30",
        ])
        .output()
        .unwrap();
    assert_eq!(res.status.code(), Some(2));
    // digits below the floor
    let res = bin().args(["lambda0", "--digits", "10"]).output().unwrap();
    assert_eq!(res.status.code(), Some(2));
    // unknown integrand
    let res = bin()
        .args(["integrate", "--f", "nope", "--n", "4", "--omega", "2"])
        .output()
        .unwrap();
    assert_eq!(res.status.code(), Some(2));
}

#[test]
fn curve_exports_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("curve.csv");
    let status = bin()
        .args([
            "curve", "--lambda", "0.8", "--step", "5e-3", "--format", "csv", "--out",
        ])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let body = std::fs::read_to_string(&out).unwrap();
    let mut lines = body.lines();
    let header = lines.next().unwrap();
    assert!(header.contains("re") && header.contains("im"), "header: {header}");
    assert!(lines.count() > 100);
}

#[test]
fn asymptotics_comparison_records() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("asym.json");
    let status = bin()
        .args([
            "asymptotics",
            "--n",
            "20",
            "--lambda",
            "0.5",
            "--points",
            "2,1;1.02,0.01",
            "--step",
            "5e-3",
            "--out",
        ])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let v = read_json(&out);
    let recs = v["records"].as_array().unwrap();
    assert_eq!(recs.len(), 2);
    assert_eq!(recs[0]["formula"], "outer");
    assert_eq!(recs[1]["formula"], "endpoint+1");
    for r in recs {
        assert!(r["rel_err"].as_f64().unwrap() < 0.2);
    }
}

#[test]
fn integrate_agrees_with_the_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("int.json");
    let status = bin()
        .args([
            "integrate", "--f", "exp", "--n", "8", "--omega", "10", "--digits", "40", "--out",
        ])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let v = read_json(&out);
    assert!(v["rel_gap"].as_f64().unwrap() < 1e-8);
}

#[test]
fn verify_convergence_table_via_cli() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("conv.json");
    let status = bin()
        .args([
            "verify",
            "--report",
            "convergence",
            "--quantity",
            "a2",
            "--grid",
            "10,20,40",
            "--lambda",
            "0",
            "--out",
        ])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let v = read_json(&out);
    assert_eq!(v["kind"], "convergence");
    let order = v["fitted_order"].as_f64().unwrap();
    assert!((3.5..=4.5).contains(&order), "order = {order}");
}

#[test]
fn recurrence_artifact_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("rec.json");
    let status = bin()
        .args(["recurrence", "--n", "8", "--lambda", "0.5", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let v = read_json(&out);
    assert_eq!(v["kind"], "recurrence");
    // decimal strings re-parse bit-exactly under the emitting precision
    // (the build policy for n = 8 is 40 + 2n = 56 digits)
    let ctx = oscgauss::PrecisionContext::new(56).unwrap();
    let a = oscgauss::io::complex_seq_from_json(&v["a_sq"], &ctx).unwrap();
    assert_eq!(a.len(), 7); // a^2_k for k = 1..n-1 builds p_8
    let re_emitted = oscgauss::io::complex_seq_to_json(&a, &ctx);
    assert_eq!(v["a_sq"], re_emitted);
}
