use std::path::PathBuf;
use std::process::{Command, Output};

use kstab_core::ratpoly::{parse_rational, Rational};
use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn kstab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kstab"))
        .args(args)
        .env_remove("KSTAB_TOL")
        .output()
        .expect("run kstab")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(out)))
}

fn exact(v: &Value) -> Rational {
    parse_rational(v["exact"].as_str().expect("exact value")).unwrap()
}

#[test]
fn info_shows_pieces_and_fixed_parts() {
    let out = kstab(&["info", "MM2.28"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("moment: [-1, 3]"), "{text}");
    assert!(text.contains("fixed C (degree 3)"), "{text}");
    assert!(text.contains("plane-cubic"), "{text}");

    let text = stdout(&kstab(&["info", "conic-P2"]));
    assert!(
        text.contains("fixed p1 (degree 1): 0 on [0, 1]; -1 + a on [1, 2]"),
        "{text}"
    );
}

#[test]
fn shipped_file_and_builtin_agree() {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/examples/mm2_28.toml");
    let from_file = kstab(&["info", path.to_str().unwrap(), "--format", "json"]);
    let builtin = kstab(&["info", "MM2.28", "--format", "json"]);
    assert_eq!(json(&from_file), json(&builtin));
}

#[test]
fn unknown_builtin_exits_2() {
    let out = kstab(&["info", "nosuch"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("UnknownName"));
}

#[test]
fn soliton_outputs() {
    let out = kstab(&["soliton", "MM2.23b", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let residual = v["residual"].as_f64().unwrap();
    let scale = v["scale"].as_f64().unwrap();
    assert!(residual.abs() < 1e-12 * scale);
    assert!((v["eta0"].as_f64().unwrap() - 0.154_642_823_836_606_27).abs() < 1e-12);

    let v = json(&kstab(&[
        "soliton",
        &fixture("symmetric.toml"),
        "--format",
        "json",
    ]));
    assert_eq!(v["eta0"].as_f64(), Some(0.0));

    let out = kstab(&["soliton", &fixture("one_signed.toml")]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("NoRoot"));
}

#[test]
fn invariants_flag_non_weights() {
    let out = kstab(&["invariants", "MM2.28", "--weight", "constant:1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("-63/160"), "{text}");
    assert!(text.contains("not a weight"), "{text}");

    let v = json(&kstab(&[
        "invariants",
        "MM2.28",
        "--weight",
        "constant:1",
        "--format",
        "json",
    ]));
    assert_eq!(v["futaki"]["exact"], "-63/160");
    assert_eq!(v["is_weight"], false);
}

#[test]
fn invariants_json_reproduces_delta() {
    for c in ["1/10", "1/2", "3/4"] {
        let out = kstab(&[
            "invariants",
            "conic-P2",
            "--weight",
            "constant:1",
            "--c",
            c,
            "--format",
            "json",
        ]);
        assert_eq!(out.status.code(), Some(0));
        let v = json(&out);
        let rows = v["delta"]["per_point"].as_array().unwrap();
        let recomputed = rows
            .iter()
            .map(|r| parse_rational(r["a"].as_str().unwrap()).unwrap() / exact(&r["s"]))
            .min()
            .unwrap();
        assert_eq!(recomputed, exact(&v["delta"]["delta"]), "c = {c}");
    }
    let v = json(&kstab(&[
        "invariants",
        "conic-P2",
        "--weight",
        "constant:1",
        "--c",
        "1/2",
        "--format",
        "json",
    ]));
    assert_eq!(v["delta"]["delta"]["exact"], "3/2");
}

#[test]
fn invariants_soliton_bridge() {
    let v = json(&kstab(&[
        "invariants",
        "MM2.23b",
        "--weight",
        "soliton",
        "--format",
        "json",
    ]));
    assert_eq!(v["bridge"]["passed"], true);
    assert!(v["mus"][0]["value"]["value"].as_f64().unwrap() < 0.739237);
}

#[test]
fn verdict_exit_codes() {
    let out = kstab(&["verdict", "MM2.23b", "--weight", "soliton"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["level"], "KPolystable");

    let out = kstab(&[
        "verdict", "MM2.28", "--weight", "soliton", "--git", "stable",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["level"], "KPolystable");

    let out = kstab(&[
        "verdict",
        "MM2.28",
        "--weight",
        "soliton",
        "--git",
        "semistable",
    ]);
    assert_eq!(out.status.code(), Some(4));
    let out = kstab(&[
        "verdict", "MM2.28", "--weight", "soliton", "--git", "unstable",
    ]);
    assert_eq!(out.status.code(), Some(5));
    assert_eq!(json(&out)["level"], "KUnstable");

    let out = kstab(&["verdict", "MM2.28", "--weight", "constant:1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("NotAWeight"));

    let out = kstab(&[
        "verdict",
        "conic-P2",
        "--weight",
        "constant:1",
        "--c",
        "3/4",
    ]);
    assert_eq!(out.status.code(), Some(4));
    let out = kstab(&[
        "verdict",
        "conic-P2",
        "--weight",
        "constant:1",
        "--c",
        "4/5",
    ]);
    assert_eq!(out.status.code(), Some(5));

    let out = kstab(&[
        "verdict",
        "MM2.23b",
        "--weight",
        &fixture("exp_weight.toml"),
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn reproduce_runs_every_criterion() {
    let out = kstab(&["reproduce"]);
    let text = stdout(&out);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert_eq!(
        text.lines().filter(|l| l.starts_with("[PASS]")).count(),
        11,
        "{text}"
    );

    let text = stdout(&kstab(&["reproduce", "--only", "conic"]));
    assert_eq!(
        text.lines().filter(|l| l.starts_with("[PASS]")).count(),
        3,
        "{text}"
    );

    let out = kstab(&["reproduce", "--only", "nothing"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_rows() {
    let out = kstab(&[
        "sweep",
        "MM2.28",
        "--family",
        "0,1/2,1,2,4",
        "--git",
        "stable",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("c,eta,mu,verdict"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 5);
    for row in &rows {
        let mu: f64 = row[2].parse().unwrap();
        assert!(mu > 0.0 && mu < 1.0);
        assert_eq!(row[3], "KPolystable");
    }

    let text = stdout(&kstab(&[
        "sweep",
        &fixture("one_signed.toml"),
        "--family",
        "0,1",
    ]));
    assert_eq!(
        text.lines()
            .filter(|l| l.ends_with("no-exp-weight"))
            .count(),
        2,
        "{text}"
    );
}

#[test]
fn export_dh_is_normalized() {
    let out = kstab(&[
        "export-dh",
        "MM2.23b",
        "--weight",
        "soliton",
        "--samples",
        "200",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("alpha,density"));
    let points: Vec<(f64, f64)> = lines
        .map(|l| {
            let (a, d) = l.split_once(',').unwrap();
            (a.parse().unwrap(), d.parse().unwrap())
        })
        .collect();
    assert_eq!(points.len(), 200);
    assert!(points.iter().all(|p| p.1 >= 0.0));
    let trapezoid: f64 = points
        .windows(2)
        .map(|w| 0.5 * (w[1].0 - w[0].0) * (w[0].1 + w[1].1))
        .sum();
    assert!((trapezoid - 1.0).abs() < 1e-3, "{trapezoid}");
}

#[test]
fn tolerance_must_be_positive() {
    assert_eq!(
        kstab(&["soliton", "MM2.28", "--tol", "0"]).status.code(),
        Some(2)
    );
    let out = Command::new(env!("CARGO_BIN_EXE_kstab"))
        .args(["soliton", "MM2.28"])
        .env("KSTAB_TOL", "-1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_kstab"))
        .args(["soliton", "MM2.28", "--format", "json"])
        .env("KSTAB_TOL", "1e-10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn profile_and_bad_weight_inputs() {
    let text = stdout(&kstab(&["invariants", "p2-wt21-profile"]));
    assert!(text.contains("S: 1"), "{text}");
    let out = kstab(&["verdict", "MM2.28", "--weight", "gaussian"]);
    assert_eq!(out.status.code(), Some(2));
    let out = kstab(&["verdict", "conic-P2", "--weight", "constant:-1"]);
    assert_eq!(out.status.code(), Some(3));
}
