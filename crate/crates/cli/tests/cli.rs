use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const SINGLET: &str = r#"{"pauli": [[0.25,0,0,0],[0,-0.25,0,0],[0,0,-0.25,0],[0,0,0,-0.25]]}"#;
const MIXED: &str = r#"{"pauli": [[0.25,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]]}"#;

fn werner(p: f64) -> String {
    let c = -0.25 * p;
    format!(r#"{{"pauli": [[0.25,0,0,0],[0,{c},0,0],[0,0,{c},0],[0,0,0,{c}]]}}"#)
}

fn slocc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slocc"))
        .args(args)
        .output()
        .unwrap()
}

fn with_input(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_owned()
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn num(v: &Value) -> f64 {
    v.as_str()
        .map_or_else(|| v.as_f64().unwrap(), |s| s.parse().unwrap())
}

#[test]
fn classify_singlet_and_mixed() {
    let dir = tempfile::tempdir().unwrap();
    let r = json(&slocc(&[
        "classify",
        &with_input(dir.path(), "s.json", SINGLET),
    ]));
    assert_eq!(r["state"], true);
    assert_eq!(r["separable"], false);
    assert_eq!(r["cylinder_member"], false);
    assert_eq!(r["tetrahedron_member"], true);

    let r = json(&slocc(&[
        "classify",
        &with_input(dir.path(), "m.json", MIXED),
    ]));
    for k in [
        "octahedron_member",
        "tetrahedron_member",
        "cube_member",
        "cylinder_member",
        "separable",
    ] {
        assert_eq!(r[k], true, "{k}");
    }
}

#[test]
fn classify_accepts_matrix_form() {
    let dir = tempfile::tempdir().unwrap();
    let body = r#"{"re": [[0.5,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0.5]], "im": [[0,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]]}"#;
    let r = json(&slocc(&[
        "classify",
        &with_input(dir.path(), "m.json", body),
    ]));
    assert_eq!(r["separable"], true);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = with_input(dir.path(), "bad.json", "{ not json");
    assert_eq!(slocc(&["classify", &bad]).status.code(), Some(2));
    let both = with_input(
        dir.path(),
        "both.json",
        r#"{"pauli": [[1,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]], "re": [[1,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]]}"#,
    );
    assert_eq!(slocc(&["classify", &both]).status.code(), Some(2));
    let nonherm = r#"{"re": [[1,1,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]], "im": [[0,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]]}"#;
    assert_eq!(
        slocc(&["classify", &with_input(dir.path(), "nh.json", nonherm)])
            .status
            .code(),
        Some(3)
    );
    let missing = dir.path().join("absent.json");
    assert_eq!(
        slocc(&["classify", missing.to_str().unwrap()])
            .status
            .code(),
        Some(4)
    );
    let out = dir.path().to_str().unwrap();
    assert_eq!(
        slocc(&["i3322-scan", "--n", "0", "--out", out])
            .status
            .code(),
        Some(1)
    );
    let s = with_input(dir.path(), "s.json", SINGLET);
    assert_eq!(
        slocc(&["--tol-override", "bogus=1e-3", "classify", &s])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        slocc(&["--tol-override", "state=-1", "classify", &s])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        slocc(&["--tol-override", "state=1e-6", "classify", &s])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn chsh_reports() {
    let dir = tempfile::tempdir().unwrap();
    let r = json(&slocc(&[
        "chsh",
        &with_input(dir.path(), "w8.json", &werner(0.8)),
    ]));
    let f = &r["violating_filter"];
    assert!(f.is_object());
    assert!((num(&f["value"]) - (1.0 - 1.28f64.sqrt())).abs() < 1e-6);
    assert!((num(&r["optimum"]) - (1.0 - 0.8 * 2f64.sqrt())).abs() < 1e-12);

    let r = json(&slocc(&[
        "chsh",
        &with_input(dir.path(), "w6.json", &werner(0.6)),
    ]));
    assert_eq!(r["slocc_satisfies"], true);
    assert!(r["violating_filter"].is_null());

    let r = json(&slocc(&["chsh", &with_input(dir.path(), "m.json", MIXED)]));
    assert!((num(&r["optimum"]) - 1.0).abs() < 1e-12);

    let neg = r#"{"pauli": [[0.25,0,0,0],[0,0.5,0,0],[0,0,0.5,0],[0,0,0,0.5]]}"#;
    assert_eq!(
        slocc(&["chsh", &with_input(dir.path(), "n.json", neg)])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn csv_format_is_two_lines() {
    let dir = tempfile::tempdir().unwrap();
    let out = slocc(&[
        "--format",
        "csv",
        "classify",
        &with_input(dir.path(), "s.json", SINGLET),
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0].split(',').count(), lines[1].split(',').count());
    assert!(lines[0].split(',').any(|h| h == "state"));
}

#[test]
fn geometry_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = slocc(&["geometry", "--out", dir.path().to_str().unwrap()]);
    assert!(out.status.success());
    let g: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("geometry.json")).unwrap())
            .unwrap();
    let tet = g["polytopes"]
        .as_array()
        .unwrap()
        .iter()
        .find(|p| p["name"] == "tetrahedron")
        .unwrap();
    let vertices = tet["vertices"].as_array().unwrap();
    assert_eq!(vertices.len(), 4);
    for v in vertices {
        let v: Vec<f64> = v.as_array().unwrap().iter().map(num).collect();
        assert!(v.iter().all(|x| (x.abs() - 1.0).abs() < 1e-15));
        assert!((v[0] * v[1] * v[2] + 1.0).abs() < 1e-15);
    }
    let circles = g["circles"].as_array().unwrap();
    assert_eq!(circles.len(), 3);
    for c in circles {
        let axis = c["normal_axis"].as_u64().unwrap() as usize;
        for p in c["points"].as_array().unwrap() {
            let p: Vec<f64> = p.as_array().unwrap().iter().map(num).collect();
            let r2: f64 = (0..3).filter(|&k| k != axis).map(|k| p[k] * p[k]).sum();
            assert!((r2 - 1.0).abs() < 1e-12 && p[axis] == 0.0);
        }
    }
}

#[test]
fn scan_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let summary = json(&slocc(&[
        "i3322-scan",
        "--n",
        "300",
        "--seed",
        "9",
        "--out",
        out,
    ]));
    assert_eq!(summary["n"], 300);
    let csv = std::fs::read_to_string(dir.path().join("i3322_scan.csv")).unwrap();
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(header.len(), 15);
    let rows: Vec<&str> = lines.collect();
    assert!(rows.len() <= 300 && rows.len() >= 290);
    for row in rows {
        let margin: f64 = row.rsplit(',').next().unwrap().parse().unwrap();
        assert!(margin >= -1e-6);
    }
    let file: Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("i3322_summary.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(file, summary);
}

#[test]
fn duality_swap_detects_singlet() {
    let dir = tempfile::tempdir().unwrap();
    // swap operator: entanglement witness that flags the singlet
    let w = r#"{"pauli": [[0.25,0,0,0],[0,0.25,0,0],[0,0,0.25,0],[0,0,0,0.25]]}"#;
    let r = json(&slocc(&[
        "duality",
        &with_input(dir.path(), "w.json", w),
        &with_input(dir.path(), "s.json", SINGLET),
    ]));
    assert_eq!(r["detected"], true);
    assert!(num(&r["infimum"]) < 0.0);
    assert!((num(&r["infimum"]) - num(&r["infimum_orbit"])).abs() < 1e-12);
    let r = json(&slocc(&[
        "duality",
        &with_input(dir.path(), "m.json", MIXED),
        &with_input(dir.path(), "s2.json", SINGLET),
    ]));
    assert_eq!(r["detected"], false);
}
