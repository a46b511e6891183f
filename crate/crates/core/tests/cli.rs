use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_thompson-links"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn element_report_for_oriented_word() {
    let out = run(&["element", "x0 x1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("oriented: true"), "{text}");
    assert!(text.contains("c: -2"), "{text}");
    assert!(text.contains("writhe: 0"), "{text}");
    assert!(text.contains("gamma: {"), "{text}");
}

#[test]
fn element_report_for_non_oriented_word() {
    let out = run(&["element", "x0"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("oriented: false"), "{text}");
    assert!(!text.contains("writhe"), "{text}");
}

#[test]
fn element_identity_and_pair_literal() {
    let out = run(&["element", "."]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("c: 0"));

    let out = run(&["element", "--element", "((..).),(.(..)),1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("n: 3"), "{text}");
    assert!(text.contains("oriented: false"), "{text}");
}

#[test]
fn element_json_is_valid() {
    let out = run(&["element", "--json", "x0 x1"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["n"], 4);
    assert_eq!(v["c"], -2);
    assert_eq!(v["writhe"], 0);
    assert_eq!(v["gamma"]["n"], 4);
}

#[test]
fn parse_errors_exit_two() {
    let out = run(&["element", "y0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["element"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn jones_at_one_is_a_quarter() {
    let out = run(&["invariant", "--jones", "--t", "1", "x0 x1"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("value: 0.25"), "{}", stdout(&out));
}

#[test]
fn colourings_raw_and_normalized() {
    let out = run(&["invariant", "--colourings", "--m", "3", "x0 x1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("raw: 9"), "{text}");
    assert!(text.contains("normalized: 1/9"), "{text}");
}

#[test]
fn inadmissible_point_still_prints_value() {
    let out = run(&["invariant", "--jones", "--t", "0.37", "--psd", "x0 x1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(
        text.contains("inadmissible for positivity; value printed"),
        "{text}"
    );
    assert!(text.contains("value: "), "{text}");
}

#[test]
fn named_complex_constants_parse() {
    let out = run(&["invariant", "--bracket", "--A", "exp(5ipi/12)", "--symbolic", "x0 x1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("symbolic: "), "{text}");

    let out = run(&["invariant", "--jones", "--t", "i", "--psd", "x0 x1"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("positivity: admissible"));
}

#[test]
fn oriented_functional_rejects_non_oriented_element() {
    let out = run(&["invariant", "--jones", "--t", "1", "x0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn tutte_point_evaluates() {
    // identity: every normalized functional is 1 there
    let out = run(&["invariant", "--tutte", "--Q", "2", "--K", "1", "."]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("value: 1"), "{}", stdout(&out));
}

#[test]
fn audit_empty_corpus_passes() {
    let dir = std::env::temp_dir().join("tl-cli-empty");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("empty.corpus");
    std::fs::write(&path, "# only comments\n\n").unwrap();
    let out = run(&["audit", "--corpus", path.to_str().unwrap()]);
    assert!(out.status.success());
}

#[test]
fn audit_corpus_writes_reports() {
    let dir = std::env::temp_dir().join("tl-cli-reports");
    std::fs::create_dir_all(&dir).unwrap();
    let corpus = dir.join("words.corpus");
    std::fs::write(&corpus, "x0 x1\nx1 x2\nx0 x1 x2 x3  # a longer word\n").unwrap();
    let out = run(&[
        "audit",
        "--corpus",
        corpus.to_str().unwrap(),
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("audit.json")).unwrap()).unwrap();
    assert_eq!(json["all_pass"], true);
    let csv = std::fs::read_to_string(dir.join("audit.csv")).unwrap();
    // standard menu: 4 jones + 10 bracket + 12 tutte + 3 kauffman2 + 3 components
    assert_eq!(csv.lines().count(), 1 + 32);
}

#[test]
fn audit_non_oriented_corpus_marks_inapplicable() {
    let dir = std::env::temp_dir().join("tl-cli-mixed");
    std::fs::create_dir_all(&dir).unwrap();
    let corpus = dir.join("mixed.corpus");
    std::fs::write(&corpus, "x0\nx0 x1\n").unwrap();
    let out = run(&["audit", "--corpus", corpus.to_str().unwrap(), "--json"]);
    assert!(out.status.success(), "inapplicable specs do not fail the run");
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let entries = json["entries"].as_array().unwrap();
    assert!(entries.iter().any(|e| e["status"] == "inapplicable"));
    assert!(entries
        .iter()
        .filter(|e| e["functional"].as_str().unwrap().starts_with("bracket"))
        .all(|e| e["verdict"] == true));
}

#[test]
fn audit_census_five_passes() {
    let out = run(&["audit", "--census", "5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("pass: seven unordered pairs with c = -2"), "{text}");
    assert!(text.contains("pass: one unordered pair with c = -4"), "{text}");
    assert!(!text.contains("FAIL"), "{text}");
}

#[test]
fn audit_sampled_mode_deterministic() {
    let args = ["audit", "--corpora", "1", "--r-max", "5", "--leaf-cap", "5", "--seed", "3", "--csv"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
}
