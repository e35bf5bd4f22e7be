use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use cbpower::exact::{parse_rational, rational};
use cbpower_cli::report::AnalysisDoc;
use tempfile::TempDir;

struct Workspace {
    dir: TempDir,
}

impl Workspace {
    fn new() -> Self {
        Workspace {
            dir: tempfile::tempdir().unwrap(),
        }
    }

    fn file(&self, name: &str, contents: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        fs::write(&path, contents).unwrap();
        path
    }
}

fn cbpower(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cbpower"))
        .args(args)
        .output()
        .unwrap()
}

fn arg(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn error_category(out: &Output) -> String {
    assert!(!out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    v["error"]["category"].as_str().unwrap().to_string()
}

#[test]
fn analyze_majority_under_shapley_shubik() {
    let ws = Workspace::new();
    let sys = ws.file("majority3.json", r#"{"weights": [1, 1, 1], "quota": 2}"#);
    let mu = ws.file("shapley.json", r#"{"type": "shapley-shubik"}"#);
    let out = stdout(&cbpower(&[
        "analyze",
        "--system",
        arg(&sys),
        "--measure",
        arg(&mu),
        "--format",
        "json",
        "--numeric",
        "rational",
    ]));
    let doc: AnalysisDoc = serde_json::from_str(&out).unwrap();
    assert_eq!(doc.voters.len(), 3);
    for v in &doc.voters {
        assert_eq!(v.d, "1/3");
        assert_eq!(v.s, "5/6");
    }
    assert_eq!(doc.efficiency, "1/2");
}

#[test]
fn json_round_trips_byte_for_byte() {
    let ws = Workspace::new();
    let sys = ws.file(
        "w.json",
        r#"{"weights": ["3", "2", "1/2", 0], "relative_quota": "0.6"}"#,
    );
    for measure in ["pb", "ss", "unanimity"] {
        let out = stdout(&cbpower(&[
            "analyze",
            "--system",
            arg(&sys),
            "--measure",
            measure,
            "--format",
            "json",
        ]));
        let doc: AnalysisDoc = serde_json::from_str(&out).unwrap();
        let again = serde_json::to_string_pretty(&doc).unwrap() + "\n";
        assert_eq!(again, out);
    }
}

#[test]
fn csv_header_contract_is_stable() {
    let ws = Workspace::new();
    let sys = ws.file("w321.json", r#"{"weights": [3, 2, 1], "quota": 4}"#);
    let run = || {
        stdout(&cbpower(&[
            "analyze",
            "--system",
            arg(&sys),
            "--measure",
            "pb",
            "--format",
            "csv",
        ]))
    };
    let first = run();
    assert_eq!(
        first.lines().next().unwrap(),
        "voter,DPlus,DMinus,D,SPlus,SMinus,S,E"
    );
    assert_eq!(
        first.lines().nth(1).unwrap(),
        "1,3/8,3/8,3/4,3/8,1/2,7/8,3/8"
    );
    assert_eq!(first, run());
}

#[test]
fn decimal_mode_rounds_half_to_even() {
    let ws = Workspace::new();
    let sys = ws.file("w321.json", r#"{"weights": [3, 2, 1], "quota": 4}"#);
    let out = stdout(&cbpower(&[
        "analyze",
        "--system",
        arg(&sys),
        "--measure",
        "pb",
        "--format",
        "csv",
        "--numeric",
        "decimal",
        "--digits",
        "2",
    ]));
    // 3/8 = 0.375 -> 0.38 and 1/8 = 0.125 -> 0.12
    assert_eq!(
        out.lines().nth(1).unwrap(),
        "1,0.38,0.38,0.75,0.38,0.50,0.88,0.38"
    );
    assert!(out.lines().nth(2).unwrap().starts_with("2,0.12,0.12,0.25,"));
    for digits in ["0", "51"] {
        let bad = cbpower(&[
            "analyze",
            "--system",
            arg(&sys),
            "--measure",
            "pb",
            "--numeric",
            "decimal",
            "--digits",
            digits,
        ]);
        assert_eq!(error_category(&bad), "usage");
    }
}

#[test]
fn converge_shapley_majority_success() {
    let out = stdout(&cbpower(&[
        "converge",
        "--quantity",
        "S",
        "--measure",
        "shapley",
        "--relative-quota",
        "1/2",
        "--simple",
        "--n",
        "3:101:2",
        "--format",
        "csv",
    ]));
    let mut lines = out.lines();
    assert_eq!(lines.next().unwrap(), "N,S,limit,bound,gap,ratio");
    let mut count = 0;
    for line in lines {
        let cells: Vec<&str> = line.split(',').collect();
        let n: i64 = cells[0].parse().unwrap();
        assert_eq!(n % 2, 1);
        assert_eq!(
            parse_rational(cells[1]).unwrap(),
            rational(3, 4) + rational(1, 4 * n)
        );
        count += 1;
    }
    assert_eq!(count, 50);
}

#[test]
fn converge_reports_bounds_and_rejects_bad_ranges() {
    let out = stdout(&cbpower(&[
        "converge",
        "--quantity",
        "E",
        "--measure",
        "pb",
        "--relative-quota",
        "3/5",
        "--simple",
        "--n",
        "10,50,100",
        "--format",
        "json",
    ]));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    for row in v["rows"].as_array().unwrap() {
        let value = parse_rational(row["value"].as_str().unwrap()).unwrap();
        assert!(cbpower::exact::to_f64(&value) <= row["bound"].as_f64().unwrap());
    }
    let bad = cbpower(&[
        "converge",
        "--quantity",
        "E",
        "--measure",
        "pb",
        "--majority",
        "--n",
        "9:3",
    ]);
    assert_eq!(error_category(&bad), "usage");
    let bad = cbpower(&[
        "converge",
        "--quantity",
        "X",
        "--measure",
        "pb",
        "--majority",
        "--n",
        "3",
    ]);
    assert_eq!(error_category(&bad), "domain");
}

#[test]
fn validate_passes_for_weighted_system() {
    let ws = Workspace::new();
    let sys = ws.file("w321q4.json", r#"{"weights": [3, 2, 1], "quota": 4}"#);
    let out = stdout(&cbpower(&[
        "validate",
        "--system",
        arg(&sys),
        "--n-max",
        "16",
    ]));
    assert!(out.contains("PASS: "), "{out}");
    assert!(!out.contains("FAIL"));
    let json = stdout(&cbpower(&[
        "validate",
        "--system",
        arg(&sys),
        "--format",
        "json",
    ]));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["status"], "PASS");
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .any(|c| c["check"] == "oracle"));
}

#[test]
fn validate_skips_enumeration_above_n_max() {
    let ws = Workspace::new();
    let sys = ws.file("m5.json", r#"{"weights": [1, 1, 1, 1, 1], "quota": 3}"#);
    let out = stdout(&cbpower(&[
        "validate",
        "--system",
        arg(&sys),
        "--n-max",
        "4",
        "--format",
        "csv",
    ]));
    assert!(out
        .lines()
        .any(|l| l.starts_with("oracle,") && l.contains(",SKIP,")));
}

#[test]
fn sample_is_seed_deterministic_and_shows_exact_values() {
    let ws = Workspace::new();
    let sys = ws.file("w321.json", r#"{"weights": [3, 2, 1], "quota": 4}"#);
    let run = |seed: &str| {
        stdout(&cbpower(&[
            "sample",
            "--system",
            arg(&sys),
            "--measure",
            "pb",
            "--samples",
            "20000",
            "--seed",
            seed,
            "--quantity",
            "D",
            "--format",
            "json",
        ]))
    };
    let a = run("7");
    assert_eq!(a, run("7"));
    assert_ne!(a, run("8"));
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    let first = &v["estimates"][0];
    assert_eq!(first["voter"], 1);
    assert_eq!(first["exact"], "3/4");
    assert!(first["z"].as_f64().unwrap() < 4.0);
}

#[test]
fn asymmetric_measures_are_sampler_only() {
    let ws = Workspace::new();
    let sys = ws.file("w321.json", r#"{"weights": [3, 2, 1], "quota": 4}"#);
    let mu = ws.file(
        "skew.json",
        r#"{"type": "common-belief", "atoms": [{"p": "1/5", "mass": "1/2"}, {"p": 0.5, "mass": "1/2"}]}"#,
    );
    let bad = cbpower(&["analyze", "--system", arg(&sys), "--measure", arg(&mu)]);
    assert_eq!(error_category(&bad), "validation");
    let bad = cbpower(&[
        "sample",
        "--system",
        arg(&sys),
        "--measure",
        arg(&mu),
        "--samples",
        "100",
    ]);
    assert_eq!(error_category(&bad), "validation");
    stdout(&cbpower(&[
        "sample",
        "--system",
        arg(&sys),
        "--measure",
        arg(&mu),
        "--samples",
        "100",
        "--allow-asymmetric",
    ]));
}

#[test]
fn common_belief_measure_file() {
    let ws = Workspace::new();
    let sys = ws.file("m3.json", r#"{"weights": [1, 1, 1], "quota": 2}"#);
    let mu = ws.file(
        "mix.json",
        r#"{"type": "common-belief",
            "atoms": [{"p": "3/10", "mass": "1/4"}, {"p": "7/10", "mass": "1/4"}],
            "segments": [{"a": 0, "b": 1, "mass": "1/2"}]}"#,
    );
    let out = stdout(&cbpower(&[
        "analyze",
        "--system",
        arg(&sys),
        "--measure",
        arg(&mu),
        "--format",
        "json",
    ]));
    let doc: AnalysisDoc = serde_json::from_str(&out).unwrap();
    assert_eq!(doc.efficiency, "1/2");
}

#[test]
fn explicit_family_and_invariant_check() {
    let ws = Workspace::new();
    let majority = ws.file(
        "maj.json",
        r#"{"voters": 3, "winning": [[1, 2], [1, 3], [2, 3], [1, 2, 3]]}"#,
    );
    let out = stdout(&cbpower(&[
        "invariant-check",
        "--family",
        arg(&majority),
        "--format",
        "json",
    ]));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["invariant"], true);
    assert_eq!(v["weights"], serde_json::json!(["1", "1", "1"]));
    assert_eq!(v["quota"], "2");

    let dictator = ws.file(
        "dict.json",
        r#"{"voters": 3, "winning": [[1], [1, 2], [1, 3], [1, 2, 3]]}"#,
    );
    let out = stdout(&cbpower(&[
        "invariant-check",
        "--family",
        arg(&dictator),
        "--format",
        "json",
    ]));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["invariant"], false);
    assert!(v["weights"].is_null());

    let out = stdout(&cbpower(&[
        "analyze",
        "--system",
        arg(&dictator),
        "--measure",
        "ss",
        "--format",
        "csv",
    ]));
    assert_eq!(out.lines().nth(1).unwrap(), "1,1/2,1/2,1,1/2,1/2,1,1/2");

    let not_monotone = ws.file("bad.json", r#"{"voters": 3, "winning": [[1], [1, 2, 3]]}"#);
    let bad = cbpower(&["invariant-check", "--family", arg(&not_monotone)]);
    assert_eq!(error_category(&bad), "validation");
}

#[test]
fn error_categories() {
    let ws = Workspace::new();
    let sys = ws.file("w.json", r#"{"weights": [1, 1, 1], "quota": 2}"#);

    let malformed = ws.file(
        "bad_rational.json",
        r#"{"weights": ["1/0", 1], "quota": 1}"#,
    );
    assert_eq!(
        error_category(&cbpower(&[
            "analyze",
            "--system",
            arg(&malformed),
            "--measure",
            "pb"
        ])),
        "parse"
    );

    let mass = ws.file(
        "mass.json",
        r#"{"type": "common-belief", "atoms": [{"p": "1/2", "mass": "1/3"}]}"#,
    );
    assert_eq!(
        error_category(&cbpower(&[
            "analyze",
            "--system",
            arg(&sys),
            "--measure",
            arg(&mass)
        ])),
        "validation"
    );

    let both = ws.file(
        "both.json",
        r#"{"weights": [1, 1], "quota": 1, "relative_quota": "1/2"}"#,
    );
    assert_eq!(
        error_category(&cbpower(&[
            "analyze",
            "--system",
            arg(&both),
            "--measure",
            "pb"
        ])),
        "parse"
    );

    let huge = ws.file(
        "huge.json",
        r#"{"weights": [1, "1/1000003", 2], "quota": 2}"#,
    );
    assert_eq!(
        error_category(&cbpower(&[
            "analyze",
            "--system",
            arg(&huge),
            "--measure",
            "pb"
        ])),
        "capacity"
    );

    let missing = ws.dir.path().join("missing.json");
    assert_eq!(
        error_category(&cbpower(&[
            "analyze",
            "--system",
            arg(&missing),
            "--measure",
            "pb"
        ])),
        "io"
    );

    assert_eq!(
        error_category(&cbpower(&[
            "analyze",
            "--system",
            arg(&sys),
            "--measure",
            "nonsense"
        ])),
        "usage"
    );
    assert_eq!(error_category(&cbpower(&["frobnicate"])), "usage");
}
