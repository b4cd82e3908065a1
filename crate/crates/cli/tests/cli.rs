use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn tropcount(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tropcount"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn polygon_file(dir: &Path, json: &str) -> String {
    let path = dir.join("polygon.json");
    fs::write(&path, json).unwrap();
    path.to_string_lossy().into_owned()
}

fn last_line(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).lines().last().unwrap_or("").to_string()
}

#[test]
fn cubic_count_ends_with_total() {
    let dir = scratch("cubic");
    let poly = polygon_file(&dir, r#"{"vertices": [[0,0],[3,0],[0,3]]}"#);
    let out = tropcount(&["count", "--polygon", &poly, "--mode", "nodal", "--seed", "1"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(last_line(&out), "12");
}

#[test]
fn cusp_on_conic_is_an_invalid_problem() {
    let dir = scratch("conic");
    let poly = polygon_file(&dir, r#"{"vertices": [[0,0],[2,0],[0,2]]}"#);
    let out = tropcount(&["count", "--polygon", &poly, "--mode", "cusp", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_polygon_is_a_schema_error() {
    let dir = scratch("malformed");
    let poly = polygon_file(&dir, r#"{"vertices": [[0,0],[1,"x"]"#);
    let out = tropcount(&["count", "--polygon", &poly, "--mode", "nodal", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(4));
    let missing = tropcount(&["count", "--polygon", "/nonexistent.json", "--mode", "nodal", "--seed", "1"]);
    assert_eq!(missing.status.code(), Some(4));
}

#[test]
fn artifacts_are_byte_identical_across_runs() {
    let dir = scratch("artifacts");
    let poly = polygon_file(&dir, r#"{"vertices": [[0,0],[2,0],[2,1],[0,2]]}"#);
    let run = |tag: &str| {
        let json = dir.join(format!("{tag}.json"));
        let svg = dir.join(format!("{tag}-svg"));
        let out = tropcount(&[
            "count",
            "--polygon",
            &poly,
            "--mode",
            "cusp",
            "--seed",
            "4",
            "--emit-json",
            json.to_str().unwrap(),
            "--emit-svg",
            svg.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        let mut svgs: Vec<(String, Vec<u8>)> = fs::read_dir(&svg)
            .unwrap()
            .map(|e| {
                let e = e.unwrap();
                (e.file_name().to_string_lossy().into_owned(), fs::read(e.path()).unwrap())
            })
            .collect();
        svgs.sort();
        (fs::read(json).unwrap(), svgs, last_line(&out))
    };
    let (j1, s1, t1) = run("a");
    let (j2, s2, t2) = run("b");
    assert_eq!(j1, j2);
    assert_eq!(s1, s2);
    assert_eq!(t1, t2);
    let parsed: serde_json::Value = serde_json::from_slice(&j1).unwrap();
    assert_eq!(parsed["total"].to_string(), t1);
    assert_eq!(s1.len(), parsed["curves"].as_array().unwrap().len());
}

#[test]
fn explicit_points_file() {
    let dir = scratch("points");
    let poly = polygon_file(&dir, r#"{"vertices": [[0,0],[1,0],[0,1]]}"#);
    let pts = dir.join("points.json");
    fs::write(&pts, r#"{"points": [["1/3", "-2/7"], ["5/11", "13/17"]]}"#).unwrap();
    let out = tropcount(&["count", "--polygon", &poly, "--mode", "nodal", "--points", pts.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(last_line(&out), "1");
    fs::write(&pts, r#"{"points": [["1/3", "-2/7"]]}"#).unwrap();
    let out = tropcount(&["count", "--polygon", &poly, "--mode", "nodal", "--points", pts.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn accept_runs_a_suite() {
    let out = tropcount(&["accept", "--suite", "quad-oracle"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("PASS quad-oracle"));
    let out = tropcount(&["accept", "--suite", "obstruction", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v[0]["passed"], true);
    let out = tropcount(&["accept", "--suite", "nope"]);
    assert_eq!(out.status.code(), Some(4));
}
