use serde_json::Value;
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_geospectra"))
        .args(args)
        .output()
        .unwrap()
}

fn ok_stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn terms(json: &Value) -> Vec<(Vec<u64>, String)> {
    json["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| {
            let e = t["e"]
                .as_array()
                .unwrap()
                .iter()
                .map(|x| x.as_u64().unwrap())
                .collect();
            (e, t["c"].as_str().unwrap().to_string())
        })
        .collect()
}

#[test]
fn weight_enumerators() {
    let json: Value = serde_json::from_str(&ok_stdout(&[
        "spectrum",
        "--code",
        "hamming74",
        "--kind",
        "wef",
    ]))
    .unwrap();
    let want: Vec<(Vec<u64>, String)> = [(0, "1"), (3, "7"), (4, "7"), (7, "1")]
        .iter()
        .map(|&(e, c)| (vec![e], c.to_string()))
        .collect();
    let mut got = terms(&json);
    got.sort();
    assert_eq!(got, want);
    let rep: Value =
        serde_json::from_str(&ok_stdout(&["spectrum", "--code", "rep3", "--kind", "wef"])).unwrap();
    assert_eq!(
        terms(&rep),
        vec![(vec![0], "1".into()), (vec![3], "1".into())]
    );
}

#[test]
fn min_weight_triangle_enumerator() {
    let args = [
        "spectrum",
        "--code",
        "hamming74",
        "--kind",
        "tref",
        "--ref1",
        "min-weight",
        "--profile",
    ];
    let json: Value = serde_json::from_str(&ok_stdout(&args)).unwrap();
    let mut got = terms(&json);
    got.sort();
    let mut want: Vec<(Vec<u64>, String)> = [
        ([0, 3], "1"),
        ([3, 0], "1"),
        ([3, 4], "6"),
        ([4, 3], "6"),
        ([4, 7], "1"),
        ([7, 4], "1"),
    ]
    .iter()
    .map(|(e, c)| (e.to_vec(), c.to_string()))
    .collect();
    want.sort();
    assert_eq!(got, want);
    assert!(json["profile"]["states"].is_array());
}

#[test]
fn reference_errors_exit_with_two() {
    let cases: [&[&str]; 5] = [
        &[
            "spectrum",
            "--code",
            "hamming74",
            "--kind",
            "tref",
            "--ref1",
            "index:0",
        ],
        &[
            "spectrum",
            "--code",
            "hamming74",
            "--kind",
            "tref",
            "--ref1",
            "symbols:1000000",
        ],
        &["spectrum", "--code", "no-such-code", "--kind", "wef"],
        &[
            "bounds", "--code", "rep3", "--bound", "tetra", "--grid", "1",
        ],
        &[
            "bounds",
            "--code",
            "hamming74",
            "--bound",
            "tetra",
            "--grid",
            "1",
            "--refs",
            "explicit",
            "--ref1",
            "index:1",
        ],
    ];
    for args in cases {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn all_bounds_write_ordered_curves_and_a_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("curves.csv");
    let o = out.to_str().unwrap();
    ok_stdout(&[
        "bounds",
        "--code",
        "hamming74",
        "--bound",
        "all",
        "--grid",
        "0:10:0.5",
        "--out",
        o,
    ]);
    for kind in ["union", "triangle", "tetra"] {
        let text = fs::read_to_string(dir.path().join(format!("curves.{kind}.csv"))).unwrap();
        assert_eq!(text.lines().count(), 22);
    }
    let merged = fs::read_to_string(&out).unwrap();
    let mut lines = merged.lines();
    assert_eq!(lines.next(), Some("sigma,ebn0_db,union,triangle,tetra"));
    for line in lines {
        let v: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        assert!(v[4] <= v[3] + 1e-9 && v[3] <= v[2] + 1e-9, "{line}");
    }
    let manifest: Value = serde_json::from_str(
        &fs::read_to_string(dir.path().join("curves.csv.manifest.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(manifest["subcommand"], "bounds");
    assert_eq!(manifest["params"]["grid"], "0:10:0.5");
    assert_eq!(manifest["code"]["fingerprint"].as_str().unwrap().len(), 64);
    assert_eq!(manifest["outputs"].as_array().unwrap().len(), 4);
}

#[test]
fn single_point_grid_gives_one_row() {
    let csv = ok_stdout(&[
        "bounds",
        "--code",
        "hamming74",
        "--bound",
        "triangle",
        "--grid",
        "1",
        "--unit",
        "sigma",
    ]);
    assert_eq!(csv.lines().count(), 2);
    assert!(csv.lines().nth(1).unwrap().starts_with("triangle,1.0,"));
}

#[test]
fn simulation_is_reproducible() {
    let args = [
        "simulate",
        "--code",
        "hamming74",
        "--grid",
        "0:4:2",
        "--seed",
        "21",
        "--max-frames",
        "50000",
    ];
    let first = ok_stdout(&args);
    assert_eq!(first, ok_stdout(&args));
    let mut threaded = vec!["--threads", "1"];
    threaded.extend(args);
    assert_eq!(first, ok_stdout(&threaded));
    threaded[1] = "3";
    assert_eq!(first, ok_stdout(&threaded));
    let mut zero = args.to_vec();
    zero[8] = "0";
    assert_eq!(run(&zero).status.code(), Some(2));
}

#[test]
fn verify_reports_and_validates_input() {
    let report: Value = serde_json::from_str(&ok_stdout(&[
        "verify",
        "--code",
        "hamming74",
        "--trials",
        "2",
    ]))
    .unwrap();
    assert_eq!(report["passed"], true);
    let names: Vec<&str> = report["codes"][0]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"all-one reference mirrors the weight enumerator"));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "2 4 2\n1 0 1 1\n1 0 1 1\n").unwrap();
    assert_eq!(
        run(&["verify", "--code", bad.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["verify"]).status.code(), Some(2));
}

#[test]
fn matrix_files_are_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ternary.txt");
    fs::write(&path, "3 4 2\n1 0 1 2\n0 1 1 1\n").unwrap();
    let p = path.to_str().unwrap();
    let json: Value =
        serde_json::from_str(&ok_stdout(&["spectrum", "--code", p, "--kind", "teef"])).unwrap();
    assert_eq!(json["q"], 3);
    assert_eq!(json["kind"], "teef");
    assert_eq!(
        run(&["simulate", "--code", p, "--grid", "1"]).status.code(),
        Some(2)
    );
    assert!(Path::new(p).exists());
}
