use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use cond_miner::corpus::synthetic::{generate, SyntheticConfig};
use cond_miner::corpus::{to_jsonl, to_tsv, AnnotatedSentence};
use cond_miner::RawLabel;
use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cond-miner")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn synthetic(dir: &TempDir, size: usize, seed: u64) -> PathBuf {
    write(dir, &format!("syn-{size}-{seed}.jsonl"), &to_jsonl(&generate(&SyntheticConfig::new(size, seed)).sentences))
}

fn bundled() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data/synthetic-200.jsonl")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn validate(schema: &str, instance: &Value) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas").join(schema);
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator.iter_errors(instance).map(|e| format!("{e} at {}", e.instance_path())).collect();
    assert!(errors.is_empty(), "{errors:?}");
}

/// Sentences with `counts` labels (CA, CC, ACTION, NC) for one guideline.
fn labeled(guideline: &str, counts: [usize; 4]) -> Vec<AnnotatedSentence> {
    let mut out = Vec::new();
    for (label, n) in RawLabel::ALL.into_iter().zip(counts) {
        for i in 0..n {
            out.push(AnnotatedSentence {
                id: format!("{guideline}-{label}-{i}"),
                guideline: guideline.to_string(),
                text: "Treat now .".into(),
                parse: "(ROOT (S (VP (VB Treat) (ADVP (RB now))) (. .)))".into(),
                label,
            });
        }
    }
    out
}

#[test]
fn candidates_kept_and_removed() {
    let dir = TempDir::new().unwrap();
    let input = synthetic(&dir, 20, 1);
    let out = run(&["candidates", "--input", s(&input), "--emit", "json"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["kept"], 13);
    assert_eq!(report["removed"], 7);
    validate("candidates.schema.json", &report);

    let table = stdout(&run(&["candidates", "--input", s(&input)]));
    assert!(table.lines().last().unwrap().split_whitespace().eq(["Total", "20", "13", "7"]));
}

#[test]
fn empty_corpus_has_nothing_to_keep() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "empty.jsonl", "");
    let out = run(&["candidates", "--input", s(&input), "--emit", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!((report["kept"].as_u64(), report["removed"].as_u64()), (Some(0), Some(0)));
}

#[test]
fn malformed_parse_names_the_row() {
    let dir = TempDir::new().unwrap();
    let mut sentences = generate(&SyntheticConfig::new(5, 2)).sentences;
    sentences[3].parse = "(ROOT (S (NP (NN x))".into();
    let bad_id = sentences[3].id.clone();
    let input = write(&dir, "bad.jsonl", &to_jsonl(&sentences));
    for cmd in ["candidates", "stats", "evaluate"] {
        let out = run(&[cmd, "--input", s(&input)]);
        assert_eq!(out.status.code(), Some(1), "{cmd}");
        assert!(stderr(&out).contains(&bad_id), "{cmd}: {}", stderr(&out));
    }
}

#[test]
fn forest_evaluation_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let input = synthetic(&dir, 120, 4);
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for out in [&a, &b] {
        let res = run(&["evaluate", "--input", s(&input), "--classifier", "rf", "--seed", "7", "--out", s(out)]);
        assert!(res.status.success(), "{}", stderr(&res));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    validate("report-set.schema.json", &serde_json::from_slice(&std::fs::read(&a).unwrap()).unwrap());
}

#[test]
fn zeror_row_has_zeros() {
    let dir = TempDir::new().unwrap();
    let input = synthetic(&dir, 200, 9);
    let out = run(&[
        "evaluate", "--input", s(&input), "--classifier", "zeror", "--folds", "10", "--seed", "7", "--label-map",
        "binary-ca",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let table = stdout(&out);
    let row: Vec<&str> = table.lines().find(|l| l.starts_with("ZeroR")).unwrap().split_whitespace().collect();
    assert_eq!(row[1..4], ["0.000", "0.000", "0.000"]);
}

#[test]
fn forest_separates_bundled_corpus() {
    let dir = TempDir::new().unwrap();
    let report = dir.path().join("report.json");
    let out = run(&["evaluate", "--input", s(&bundled()), "--classifier", "rf", "--emit", "json", "--out", s(&report)]);
    assert!(out.status.success(), "{}", stderr(&out));
    let set: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let ca = &set["reports"][0]["per_class"][0];
    assert_eq!(ca["class"], "CA");
    for key in ["precision", "recall", "f_measure"] {
        assert_eq!(ca[key].as_f64(), Some(1.0), "{key}");
    }
    assert_eq!(std::fs::read_to_string(&report).unwrap(), stdout(&out));
}

#[test]
fn render_reproduces_evaluate_table() {
    let dir = TempDir::new().unwrap();
    let input = synthetic(&dir, 90, 5);
    let json = dir.path().join("r.json");
    let out = run(&["evaluate", "--input", s(&input), "--classifier", "zeror,nb,c45", "--out", s(&json)]);
    assert!(out.status.success(), "{}", stderr(&out));
    let rendered = run(&["render", "--input", s(&json)]);
    assert_eq!(stdout(&rendered), stdout(&out));
    assert_eq!(stdout(&out).lines().count(), 5);
}

#[test]
fn tampered_report_is_an_invariant_violation() {
    let dir = TempDir::new().unwrap();
    let input = synthetic(&dir, 60, 5);
    let json = dir.path().join("r.json");
    assert!(run(&["evaluate", "--input", s(&input), "--classifier", "zeror", "--out", s(&json)]).status.success());
    let mut set: Value = serde_json::from_slice(&std::fs::read(&json).unwrap()).unwrap();
    set["reports"][0]["n_instances"] = Value::from(1_000);
    std::fs::write(&json, set.to_string()).unwrap();
    let out = run(&["render", "--input", s(&json)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("invariant"));
}

#[test]
fn stats_rows_match_counts() {
    let dir = TempDir::new().unwrap();
    let mut sentences = labeled("Rhinosinusitis", [97, 39, 15, 726]);
    sentences.extend(labeled("Asthma", [38, 7, 8, 224]));
    sentences.extend(labeled("Hypertension", [63, 14, 1, 238]));
    let input = write(&dir, "corpus.tsv", &to_tsv(&sentences));
    let out = run(&["stats", "--input", s(&input)]);
    assert!(out.status.success(), "{}", stderr(&out));
    let rows: Vec<Vec<String>> =
        stdout(&out).lines().map(|l| l.split_whitespace().map(str::to_string).collect()).collect();
    assert_eq!(rows[1], ["Asthma", "38", "7", "8", "224"]);
    assert_eq!(rows[2], ["Hypertension", "63", "14", "1", "238"]);
    assert_eq!(rows[3], ["Rhinosinusitis", "97", "39", "15", "726"]);
    assert_eq!(rows[4], ["Total", "198", "60", "24", "1188"]);

    let json = run(&["stats", "--input", s(&input), "--emit", "json"]);
    let value: Value = serde_json::from_str(&stdout(&json)).unwrap();
    validate("stats.schema.json", &value);
    assert_eq!(value["rows"][0]["counts"]["NC"], 224);
}

#[test]
fn stats_of_empty_corpus_is_header_only() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "empty.jsonl", "\n");
    let out = run(&["stats", "--input", s(&input)]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 1);
    assert!(text.starts_with("Guideline"));
}

#[test]
fn stats_two_guidelines_alphabetical() {
    let dir = TempDir::new().unwrap();
    let mut sentences = labeled("zeta", [1, 0, 0, 1]);
    sentences.extend(labeled("alpha", [0, 2, 1, 0]));
    let input = write(&dir, "two.jsonl", &to_jsonl(&sentences));
    let text = stdout(&run(&["stats", "--input", s(&input)]));
    let names: Vec<&str> = text.lines().skip(1).map(|l| l.split_whitespace().next().unwrap()).collect();
    assert_eq!(names, ["alpha", "zeta", "Total"]);
}

#[test]
fn featurize_and_train_outputs_validate() {
    let dir = TempDir::new().unwrap();
    let input = synthetic(&dir, 40, 3);
    let features = dir.path().join("features.jsonl");
    let vocab = dir.path().join("vocab.json");
    let out = run(&["featurize", "--input", s(&input), "--out", s(&features), "--vocab", s(&vocab)]);
    assert!(out.status.success(), "{}", stderr(&out));
    let lines = std::fs::read_to_string(&features).unwrap();
    assert_eq!(lines.lines().count(), 26);
    for line in lines.lines() {
        validate("features.schema.json", &serde_json::from_str(line).unwrap());
    }
    let vocabulary: Value = serde_json::from_slice(&std::fs::read(&vocab).unwrap()).unwrap();
    validate("vocabulary.schema.json", &vocabulary);

    for classifier in ["zeror", "nb", "c45", "rf"] {
        let out = run(&["train", "--input", s(&input), "--classifier", classifier, "--trees", "5"]);
        assert!(out.status.success(), "{}", stderr(&out));
        let model: Value = serde_json::from_str(&stdout(&out)).unwrap();
        validate("model.schema.json", &model);
        assert_eq!(model["vocabulary"], vocabulary);
    }
}

#[test]
fn corpus_lines_validate() {
    for line in std::fs::read_to_string(bundled()).unwrap().lines() {
        validate("sentence.schema.json", &serde_json::from_str(line).unwrap());
    }
}

#[test]
fn generate_synthetic_matches_bundled_corpus() {
    let out = run(&["generate-synthetic", "--size", "200", "--seed", "42"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), std::fs::read_to_string(bundled()).unwrap());
}

#[test]
fn argument_errors_exit_one() {
    assert_eq!(run(&["evaluate", "--input", "x.jsonl", "--classifier", "svm"]).status.code(), Some(1));
    assert_eq!(run(&["stats"]).status.code(), Some(1));
    assert_eq!(run(&["stats", "--input", "/nonexistent/corpus.jsonl"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn too_few_folds_is_a_config_error() {
    let dir = TempDir::new().unwrap();
    let input = synthetic(&dir, 20, 1);
    let out = run(&["evaluate", "--input", s(&input), "--folds", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["evaluate", "--input", s(&input), "--folds", "50"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("folds"));
}
