use std::fs;
use std::process::Command;

use mendeleev::cli::run;
use mendeleev::quartet::{quartet_of, z_of, Quartet};

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("mendeleev").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = call(args);
    assert_eq!(code, 0, "{args:?} failed: {err}");
    out
}

#[test]
fn table_csv_cardinality() {
    let out = ok(&["table", "--max-z", "10", "--format", "csv"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 11);
    assert!(lines[0].starts_with("z,n,l,j,m,"));
}

#[test]
fn table_text_labels() {
    let out = ok(&["table", "--max-z", "116", "--format", "text"]);
    assert!(out.contains("110:Ds"));
    assert!(out.contains("114:X?"));
    let out = ok(&["table", "--max-z", "120", "--format", "text"]);
    for z in 117..=120 {
        assert!(out.contains(&format!("{z}:no")), "Z={z}");
    }
}

#[test]
fn table_rejects_bad_flags() {
    assert_eq!(call(&["table", "--max-z", "0"]).0, 1);
    assert_eq!(call(&["table", "--max-z", "10", "--format", "xml"]).0, 1);
    assert_eq!(call(&["frobnicate"]).0, 1);
    assert_eq!(call(&["--help"]).0, 0);
}

#[test]
fn element_lookup() {
    let out = ok(&["element", "--z", "57"]);
    assert!(out.contains("family        Other"));
    assert!(out.contains("InnerTransition(n=4)"));
    assert!(out.contains("sub-block j   5/2"));
    let out = ok(&["element", "--quartet", "1,0,1/2,-1/2"]);
    assert!(out.contains("Z             1\n"));
    assert!(out.contains("AlkaliMetal"));
    let out = ok(&["element", "--symbol", "Cl", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["z"], 17);
    assert_eq!(v["family"], "Halogen");
}

#[test]
fn element_errors() {
    let (code, _, err) = call(&["element", "--z", "0"]);
    assert_eq!(code, 2);
    assert!(err.contains("at least 1"));
    let (code, _, err) = call(&["element", "--quartet", "2,1,3/2,5/2"]);
    assert_eq!(code, 2);
    assert!(err.contains("m must be"), "{err}");
    let (code, _, err) = call(&["element", "--quartet", "1,1,1/2,1/2"]);
    assert_eq!(code, 2);
    assert!(err.contains("l must satisfy"), "{err}");
    assert_eq!(call(&["element", "--z", "1", "--quartet", "1,0,1/2,1/2"]).0, 1);
    assert_eq!(call(&["element"]).0, 1);
}

#[test]
fn navigate_examples() {
    assert!(ok(&["navigate", "--from-z", "1", "--to-z", "2", "--via", "so3"]).starts_with("1 step "));
    // H and Li share the (0,1/2,-1/2) avenue
    assert_eq!(quartet_of(3).unwrap(), Quartet::new(2, 0, 1, -1).unwrap());
    assert!(ok(&["navigate", "--from-z", "1", "--to-z", "3", "--via", "so21"]).starts_with("1 step "));
    let out = ok(&["navigate", "--from-z", "1", "--to-z", "80", "--via", "so42", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 1);
    assert_eq!(v[0]["z"], 80);
    let out = ok(&["navigate", "--from", "1,0,1/2,-1/2", "--to-z", "2", "--via", "so21"]);
    assert_eq!(out.trim(), "unreachable");
    let out = ok(&["navigate", "--from-z", "1", "--to-z", "2", "--via", "so21", "--format", "json"]);
    assert_eq!(out.trim(), "null");
    assert_eq!(call(&["navigate", "--from-z", "1", "--to-z", "2", "--via", "so7"]).0, 1);
}

#[test]
fn navigate_multi_algebra() {
    // H -> He (so3) -> Be (so21) -> Ne (so4: the m = +1/2 end maps to m = +3/2)
    let out = ok(&["navigate", "--from-z", "1", "--to-z", "10", "--via", "so3,so4,so21", "--format", "csv"]);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.last().unwrap().split(',').next(), Some("10"));
    let zs: Vec<&str> = rows.iter().map(|r| r.split(',').next().unwrap()).collect();
    assert_eq!(zs, ["2", "4", "10"]);
}

fn write_data(dir: &tempfile::TempDir, name: &str, body: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn fit_and_predict_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let mut body = String::from("# synthetic: 2 + 3n on the alkali column\nz,value\n");
    for n in 1..=6u32 {
        let z = z_of(&Quartet::new(n, 0, 1, -1).unwrap());
        body.push_str(&format!("{z},{}\n", 2.0 + 3.0 * n as f64));
    }
    body.push_str("2,\n");
    let data = write_data(&dir, "alkali.csv", &body);
    let model_path = dir.path().join("model.json");
    let model_str = model_path.to_str().unwrap();
    let out = ok(&[
        "fit", "--data", &data, "--property", "synthetic", "--unit", "eV", "--scope", "family", "--column",
        "0,1/2,-1/2", "--basis", "1,n", "--format", "json", "--out", model_str,
    ]);
    let report: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(report["max_abs_residual"].as_f64().unwrap() <= 1e-9);
    assert_eq!(report["scope"]["kind"], "family");
    assert_eq!(report["scope"]["column"], "0,1/2,-1/2");
    assert_eq!(report["residuals"].as_array().unwrap().len(), 6);
    assert!((report["coefficients"][1].as_f64().unwrap() - 3.0).abs() < 1e-9);

    let out = ok(&["predict", "--model", model_str, "--z", "87,119", "--format", "json"]);
    let preds: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!((preds[0]["value"].as_f64().unwrap() - 23.0).abs() < 1e-9);
    assert!((preds[1]["value"].as_f64().unwrap() - 26.0).abs() < 1e-9);
    assert_eq!(preds[1]["status"], "Unobserved");

    let out = ok(&[
        "predict", "--data", &data, "--scope", "family", "--column", "0,1/2,-1/2", "--basis", "1,n", "--z", "119",
    ]);
    assert!(out.contains("Z=119"));
}

#[test]
fn fit_error_codes() {
    let dir = tempfile::tempdir().unwrap();
    let data = write_data(&dir, "few.csv", "z,value\n1,1.0\n3,2.0\n");
    let (code, _, err) = call(&["fit", "--data", &data, "--scope", "family", "--column", "0,1/2,-1/2"]);
    assert_eq!(code, 3, "{err}");
    assert!(err.contains("underdetermined"));
    let (code, _, err) =
        call(&["fit", "--data", &data, "--scope", "family", "--column", "0,1/2,-1/2", "--basis", "1,j(j+1)"]);
    assert_eq!(code, 3);
    assert!(err.contains("j(j+1)"), "{err}");
    let (code, _, _) = call(&["fit", "--data", &data, "--scope", "period", "--n", "4", "--basis", "1"]);
    assert_eq!(code, 3);
    let (code, _, _) = call(&["fit", "--data", "/nonexistent/data.csv", "--scope", "period", "--n", "2"]);
    assert_eq!(code, 4);
    let (code, _, _) = call(&["fit", "--data", &data, "--scope", "period"]);
    assert_eq!(code, 1);
    let bad = write_data(&dir, "bad.csv", "z,value\nx,1.0\n");
    let (code, _, err) = call(&["fit", "--data", &bad, "--scope", "period", "--n", "2"]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2"));
}

#[test]
fn registry_override() {
    let dir = tempfile::tempdir().unwrap();
    let reg = write_data(&dir, "reg.csv", "z,symbol,name,status\n1,H,hydrogen,named\n117,Ts,tennessine,named\n");
    let out = ok(&["--registry", &reg, "table", "--max-z", "120"]);
    assert!(out.contains("117:Ts"));
    assert!(out.contains("2:no"));
    assert_eq!(call(&["--registry", "/nonexistent.csv", "table", "--max-z", "3"]).0, 4);
    let saved = ok(&["--registry", &reg, "registry"]);
    assert_eq!(saved, fs::read_to_string(dir.path().join("reg.csv")).unwrap());
}

#[test]
fn config_and_shells() {
    assert_eq!(ok(&["shells", "--count", "12"]).trim(), "1s 2s 2p 3s 3p 4s 3d 4p 5s 4d 5p 6s");
    assert_eq!(ok(&["config", "--z", "10"]).trim(), "1s2 2s2 2p6");
    let out = ok(&["config", "--z", "29", "--compare", "[Ar] 3d10 4s1"]);
    assert!(out.contains("4s: idealized 2 observed 1"));
    assert_eq!(call(&["config", "--z", "29", "--compare", "[Ar] 3d10"]).0, 2);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_mendeleev");
    let status = Command::new(bin).args(["element", "--z", "0"]).output().unwrap();
    assert_eq!(status.status.code(), Some(2));
    let status = Command::new(bin).args(["table", "--max-z", "2", "--format", "csv"]).output().unwrap();
    assert_eq!(status.status.code(), Some(0));
    assert_eq!(String::from_utf8(status.stdout).unwrap().lines().count(), 3);
    let status = Command::new(bin).args(["table"]).output().unwrap();
    assert_eq!(status.status.code(), Some(1));
}
