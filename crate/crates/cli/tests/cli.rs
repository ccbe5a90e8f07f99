use std::process::{Command, Output};

fn tatemzv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tatemzv")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn bg_with_cross_checks() {
    let o = tatemzv(&["bg", "--q", "3", "--d", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "BG_7 = θ^3 + 2*θ + 1, deg 3 (formula: 3) ✓, formulaBG ✓");
    // n = q^d - 2 is recognized
    let o = tatemzv(&["bg", "--q", "3", "--n", "7"]);
    assert!(stdout(&o).contains("formulaBG ✓"));
    let o = tatemzv(&["bg", "--q", "3", "--n", "5"]);
    assert!(o.status.success());
    assert!(!stdout(&o).contains("formula"));
}

#[test]
fn powsum_matches_closed_form() {
    let o = tatemzv(&["powsum", "--q", "3", "--d", "1", "--data", "t1:1"]);
    assert!(o.status.success());
    // (t1 - θ)/(θ - θ^3) with a monic denominator
    assert_eq!(stdout(&o).trim(), "S_1(t1:1) = (2*t1 + θ)/(θ^3 + 2*θ)");
}

#[test]
fn survey_rows_and_bound() {
    let o = tatemzv(&["bg-survey", "--q", "3", "--d", "2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("BG ≡ 0 for 0 of them, bound 1 ✓"), "{text}");
    let o = tatemzv(&["bg-survey", "--q", "3", "--d", "2", "--format", "csv"]);
    let csv = stdout(&o);
    assert_eq!(csv.lines().count(), 4);
    assert!(csv.lines().skip(1).all(|l| l.contains(",true,")));
}

#[test]
fn verify_exit_status_and_report() {
    let dir = std::env::temp_dir().join(format!("tatemzv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let o = tatemzv(&[
        "verify",
        "--q",
        "3",
        "--d-max",
        "5",
        "--suite",
        "all",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["passed"], true);
    let reports = doc["reports"].as_array().unwrap();
    assert!(reports.len() > 30);
    for r in reports {
        for key in ["id", "params", "status", "witness", "elapsed_ms"] {
            assert!(r.get(key).is_some(), "missing {key}");
        }
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_single_check() {
    let o = tatemzv(&["verify", "--suite", "thm-formulas-2", "--q", "4", "--d-max", "4", "--format", "jsonl"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 1);
    let r: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
    assert_eq!(r["id"], "thm-formulas-2");
    assert_eq!(r["status"], "pass");
    assert_eq!(r["params"]["d_max"], 4);
}

#[test]
fn rejects_characteristic_two_and_bad_input() {
    let o = tatemzv(&["verify", "--q", "2", "--suite", "eq-e1"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("q > 2"));
    let o = tatemzv(&["powsum", "--q", "3", "--d", "1", "--data", "t1:1,,"]);
    assert!(!o.status.success());
    let o = tatemzv(&["bg-survey", "--q", "3", "--d", "9", "--budget", "100"]);
    let err = String::from_utf8_lossy(&o.stderr).to_string();
    assert!(!o.status.success());
    assert!(err.contains("exceeds the budget of 100"), "{err}");
}

#[test]
fn zeta_and_skew_print() {
    let o = tatemzv(&["zeta", "--q", "3", "--data", "1:1", "--prec", "6"]);
    assert_eq!(stdout(&o).trim(), "ζ(1:1) = 1 + 2*θ^-3 + 2*θ^-5 + O(θ^-7)");
    let o = tatemzv(&["skew", "--q", "3", "--d", "0", "--n", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "𝔖_0(q^2;1) = 1");
}

#[test]
fn multiple_fields_get_sections() {
    let o = tatemzv(&["partial", "--q", "3,5", "--d", "1", "--data", "1:1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("# q = 3") && text.contains("# q = 5"), "{text}");
}
