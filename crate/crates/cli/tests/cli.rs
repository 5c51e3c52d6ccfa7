use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const EXAMPLE: &str = r#"{
  "p": ["(2t^8-10t^6-10t^4+5t^2+1)/(t^2+1)", "-(t^9-6t^7+6t^3+t^2-3t+1)/(t^2+1)", "t^7+3t^5+3t^3+t+5"],
  "q": ["2t(t^4-6t^2+1)", "-t^6+7t^4-7t^2+1", "(t^2+1)^3"]
}"#;

const IMPLICIT: &str = "x^6+y^5*z+6*x^5+14*x^4+16*x^3+8*x^2+z^2";

fn ruledsym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ruledsym")).args(args).output().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn diagnostic(o: &Output) -> Value {
    let err = String::from_utf8_lossy(&o.stderr);
    let line = err.lines().find(|l| l.starts_with('{')).expect("diagnostic line");
    serde_json::from_str(line).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn solve_all_and_involutions() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "example.json", EXAMPLE);
    let all = ruledsym(&["solve", "--mode", "all", "--input", &input]);
    assert!(all.status.success());
    let all = json(&all);
    assert_eq!(all["count"], 8);
    assert_eq!(all["surface"], "example");
    let inv = json(&ruledsym(&["solve", "--mode", "involutions", "--input", &input]));
    assert_eq!(inv["count"], 6);
    let kinds = |v: &Value| -> Vec<Value> {
        v["isometries"].as_array().unwrap().iter().filter(|f| f["kind"] != "rotoreflection").cloned().collect()
    };
    assert_eq!(kinds(&all).len(), 6);
    for f in kinds(&inv) {
        assert!(kinds(&all).iter().any(|g| g["Q"] == f["Q"] && g["b"] == f["b"]));
    }
}

#[test]
fn implicit_report() {
    let out = ruledsym(&["implicit", "--poly", IMPLICIT, "--assume-irreducible"]);
    assert!(out.status.success());
    let v = json(&out);
    let kinds: Vec<&str> = v["isometries"].as_array().unwrap().iter().map(|f| f["kind"].as_str().unwrap()).collect();
    assert!(kinds.contains(&"axial") && kinds.contains(&"reflection"));
    let refl = v["isometries"].as_array().unwrap().iter().find(|f| f["kind"] == "reflection").unwrap();
    assert_eq!(refl["fixed_locus"]["type"], "plane");
}

#[test]
fn irreducibility_must_be_asserted() {
    let out = ruledsym(&["implicit", "--poly", IMPLICIT]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(diagnostic(&out)["error"]["code"], "IRREDUCIBILITY_NOT_ASSERTED");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let cyl = write(dir.path(), "cyl.json", r#"{"q": ["t+1", "2t+2", "3t+3"]}"#);
    let out = ruledsym(&["solve", "--input", &cyl]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(diagnostic(&out)["error"]["code"], "CYLINDRICAL_INPUT");

    let bad = write(dir.path(), "bad.json", r#"{"q": ["t+", "1", "t"]}"#);
    let out = ruledsym(&["solve", "--input", &bad]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(diagnostic(&out)["error"]["code"], "PARSE_ERROR");

    let out = ruledsym(&["solve", "--input", &dir.path().join("missing.json").to_string_lossy()]);
    assert_eq!(out.status.code(), Some(1));

    let out = ruledsym(&["solve", "--surface", r#"{"p": ["t^2","0","t^3"], "q": ["t","1","t+1"]}"#]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(diagnostic(&out)["error"]["code"], "POSITIVE_DIMENSIONAL");

    let out = ruledsym(&["solve", "--mode", "conical", "--corpus", "nonic-scroll"]);
    assert_eq!(diagnostic(&out)["error"]["code"], "NOT_CONICAL");
}

#[test]
fn output_is_deterministic_and_can_go_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let a = ruledsym(&["solve", "--corpus", "triple-turn-cone"]);
    let b = ruledsym(&["solve", "--corpus", "triple-turn-cone"]);
    assert_eq!(a.stdout, b.stdout);
    let path = dir.path().join("report.json");
    let c = ruledsym(&["solve", "--corpus", "triple-turn-cone", "--output", &path.to_string_lossy()]);
    assert!(c.status.success() && c.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), a.stdout);
}

fn read_mesh(path: &Path) -> Vec<[f64; 5]> {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,s,x,y,z"));
    lines
        .map(|l| {
            let v: Vec<f64> = l.split(',').map(|x| x.parse().unwrap()).collect();
            [v[0], v[1], v[2], v[3], v[4]]
        })
        .collect()
}

#[test]
fn mesh_of_the_example() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "example.json", EXAMPLE);
    let mesh = dir.path().join("mesh.csv");
    let out = ruledsym(&[
        "solve", "--input", &input, "--emit-mesh", &mesh.to_string_lossy(), "--t-range", "-2,2", "--s-range", "-1,1", "--samples",
        "50,20",
    ]);
    assert!(out.status.success());
    let rows = read_mesh(&mesh);
    // no real poles in [-2, 2]
    assert_eq!(rows.len(), 1000);
    for r in &rows {
        let (t, s) = (r[0], r[1]);
        let d = t * t + 1.0;
        let p = [
            (2.0 * t.powi(8) - 10.0 * t.powi(6) - 10.0 * t.powi(4) + 5.0 * t * t + 1.0) / d,
            -(t.powi(9) - 6.0 * t.powi(7) + 6.0 * t.powi(3) + t * t - 3.0 * t + 1.0) / d,
            t.powi(7) + 3.0 * t.powi(5) + 3.0 * t.powi(3) + t + 5.0,
        ];
        let q = [2.0 * t * (t.powi(4) - 6.0 * t * t + 1.0), -t.powi(6) + 7.0 * t.powi(4) - 7.0 * t * t + 1.0, d.powi(3)];
        for i in 0..3 {
            let want = p[i] + s * q[i];
            assert!((r[2 + i] - want).abs() <= 1e-9 * want.abs().max(1.0));
        }
    }
}

#[test]
fn mesh_skips_pole_columns() {
    let dir = tempfile::tempdir().unwrap();
    let mesh = dir.path().join("mesh.csv");
    let out = ruledsym(&[
        "solve", "--surface", r#"{"p": ["1/t", "t^2", "0"], "q": ["t", "1", "t^3"]}"#, "--emit-mesh", &mesh.to_string_lossy(),
        "--t-range", "-1,1", "--samples", "5,3",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(read_mesh(&mesh).len(), 12);
}

/// Reflections whose reparametrization maps the sample grid onto itself must map the
/// sampled point set onto itself.
#[test]
fn cone_mesh_is_symmetric_under_grid_preserving_reflections() {
    let dir = tempfile::tempdir().unwrap();
    let mesh = dir.path().join("mesh.csv");
    let report = ruledsym(&[
        "solve", "--corpus", "four-leaf-cone", "--emit-mesh", &mesh.to_string_lossy(), "--t-range", "-1,1", "--s-range", "-1,1",
        "--samples", "9,5",
    ]);
    let report = json(&report);
    let rows = read_mesh(&mesh);
    let num = |v: &Value| v["rat"].as_str().and_then(|s| s.parse::<f64>().ok());
    let mut used = 0;
    for f in report["isometries"].as_array().unwrap().iter().filter(|f| f["kind"] == "reflection") {
        let m = &f["mobius"];
        let (a, b, g, d, k) = (num(&m["alpha"]), num(&m["beta"]), num(&m["gamma"]), num(&m["delta"]), num(&f["k"]));
        let grid_preserving = b == Some(0.0) && g == Some(0.0) && a.is_some_and(|a| a.abs() == 1.0) && k.zip(d).is_some_and(|(k, d)| (k * d.powi(6)).abs() == 1.0);
        if !grid_preserving {
            continue;
        }
        used += 1;
        let q: Vec<Vec<f64>> = f["Q"].as_array().unwrap().iter().map(|r| r.as_array().unwrap().iter().map(|x| num(x).unwrap()).collect()).collect();
        for r in &rows {
            let y: Vec<f64> = (0..3).map(|i| (0..3).map(|j| q[i][j] * r[2 + j]).sum()).collect();
            let hit = rows.iter().any(|o| (0..3).all(|i| (o[2 + i] - y[i]).abs() < 1e-9));
            assert!(hit, "image of ({}, {}) not in the mesh", r[0], r[1]);
        }
    }
    assert!(used > 0);
}

#[test]
fn system_dump_goes_to_stderr() {
    let out = ruledsym(&["solve", "--corpus", "quadratic-scroll", "--dump-system"]);
    assert!(out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("E0:"));
    assert!(json(&out)["count"].is_number());
}

#[test]
fn corpus_listing() {
    let out = ruledsym(&["corpus"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "four-leaf-cone"));
}
