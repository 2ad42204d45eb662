//! Binary-level coverage of the remaining command catalog: relation
//! calculus outputs, category subcommands, term search, and fixture
//! export shapes.

use std::path::Path;
use std::process::{Command, Output};

use permutab_cli::format;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_permutab"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn export_fixtures(dir: &Path) {
    let out = bin()
        .args(["fixtures", "export", "--all", "--dir"])
        .arg(dir)
        .output()
        .expect("binary runs");
    assert!(out.status.success());
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).display().to_string()
}

fn parse_relation(out: &Output) -> permutab::relcalc::BinRelation {
    let doc = format::parse_document(&stdout(out)).unwrap();
    format::expect_relation(&doc).unwrap().0
}

#[test]
fn relcalc_converse_power_closure_properties() {
    let dir = tempfile::tempdir().unwrap();
    export_fixtures(dir.path());
    let rel = path(dir.path(), "rel-R.json");

    let out = run(&["relcalc", "converse", "--relation", &rel]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        parse_relation(&out),
        permutab::relcalc::converse(&permutab::paperlab::relation_r())
    );

    let out = run(&["relcalc", "power", "--relation", &rel, "--n", "3"]);
    assert_eq!(parse_relation(&out), permutab::paperlab::relation_r());

    let out = run(&["relcalc", "closure", "--relation", &rel]);
    assert_eq!(parse_relation(&out), permutab::paperlab::relation_r());

    let out = run(&["relcalc", "properties", "--relation", &rel]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("reflexive") && text.contains("(true)"), "{text}");
    assert!(text.contains("symmetric") && text.contains("(false)"), "{text}");
}

#[test]
fn compatible_and_permutes_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    export_fixtures(dir.path());
    let rel = path(dir.path(), "rel-R.json");
    let alg = path(dir.path(), "subtr-A.json");

    let out = run(&["compatible", "--relation", &rel, "--algebra", &alg]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");

    // a relation missing the constant pair is incompatible
    let bad = dir.path().join("bad-rel.json");
    std::fs::write(
        &bad,
        r#"{"schema": 1, "kind": "relation", "relation": {"size": 3, "pairs": [[1,1]]}}"#,
    )
    .unwrap();
    let out = run(&["compatible", "--relation", &bad.display().to_string(), "--algebra", &alg]);
    assert_eq!(out.status.code(), Some(1), "{out:?}");

    // R permutes with itself at any degree; degree 1 is a usage error
    let out = run(&["permutes", "--left", &rel, "--right", &rel, "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["permutes", "--left", &rel, "--right", &rel, "--n", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn category_subcommands_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    export_fixtures(dir.path());
    let rel = path(dir.path(), "rel-R.json");
    let cat = path(dir.path(), "cat-R.json");

    let out = run(&["category", "from-preorder", "--relation", &rel, "--out", &cat]);
    assert_eq!(out.status.code(), Some(0));

    let out = run(&["category", "validate", "--category", &cat]);
    assert_eq!(out.status.code(), Some(0));

    let out = run(&["category", "thin", "--category", &cat]);
    assert_eq!(out.status.code(), Some(0));

    let out = run(&["category", "to-preorder", "--category", &cat]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(parse_relation(&out), permutab::paperlab::relation_r());

    // S on the four morphisms of the thin category over R
    let out = run(&["category", "s-relation", "--preorder", &rel]);
    assert_eq!(out.status.code(), Some(0));
    let s = parse_relation(&out);
    assert_eq!(s.size(), 4);
    assert!(s.contains(1, 2) && !s.contains(2, 1));

    let out = run(&["category", "cancel", "--preorder", &rel]);
    assert_eq!(out.status.code(), Some(0), "thin categories cancel");

    // both inputs at once is a usage error
    let out = run(&["category", "thin", "--category", &cat, "--preorder", &rel]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn category_validate_lists_violations() {
    let dir = tempfile::tempdir().unwrap();
    let broken = dir.path().join("broken.json");
    // two objects, two identities, composite for (1,1) missing
    std::fs::write(
        &broken,
        r#"{"schema": 1, "kind": "category", "category": {
            "objects": 2, "morphisms": 2,
            "dom": [0, 1], "cod": [0, 1], "id": [0, 1],
            "comp": [[0, 0, 0]]}}"#,
    )
    .unwrap();
    let out = run(&["category", "validate", "--category", &broken.display().to_string()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("MissingComposite"), "{out:?}");
}

#[test]
fn hm_terms_and_degree_catalog_results() {
    let dir = tempfile::tempdir().unwrap();
    export_fixtures(dir.path());
    let x = path(dir.path(), "impl-X.json");
    let a = path(dir.path(), "subtr-A.json");

    let out = run(&["hm-terms", "--algebra", &x, "--n", "2"]);
    assert_eq!(out.status.code(), Some(1), "no chain at 2: {out:?}");

    let out = run(&["hm-terms", "--algebra", &x, "--n", "3"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let text = stdout(&out);
    assert!(text.contains("θ1") && text.contains("θ2"), "{text}");
    assert!(text.contains("table"), "chains print re-runnable tables: {text}");

    let out = run(&["degree", "--algebra", &x, "--max-n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("degree 3"), "{out:?}");

    let out = run(&["degree", "--algebra", &a, "--max-n", "6"]);
    assert_eq!(out.status.code(), Some(1), "conclusive none: {out:?}");

    // clone listing shows provenance terms
    let out = run(&["clone", "--algebra", &x]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("38 operations"), "{text}");
    assert!(text.lines().any(|l| l.trim_start().starts_with("0: x")), "{text}");
}

#[test]
fn verify_paper_sections_run_individually() {
    for section in ["span", "subtraction", "monoid", "perm"] {
        let out = run(&["verify-paper", section]);
        assert_eq!(out.status.code(), Some(0), "{section}: {out:?}");
    }
}

#[test]
fn search_out_dir_and_dedup() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.json");
    std::fs::write(
        &spec,
        r#"{"schema": 1, "kind": "search-spec", "search": {
            "signature": {"s": 2, "0": 0},
            "identities": [
                {"vars": 1, "lhs": {"op": "s", "args": [{"var": 0}, {"var": 0}]}, "rhs": {"op": "0", "args": []}},
                {"vars": 1, "lhs": {"op": "s", "args": [{"var": 0}, {"op": "0", "args": []}]}, "rhs": {"var": 0}}
            ],
            "sizes": [2, 2],
            "predicate": "none"}}"#,
    )
    .unwrap();
    let models = dir.path().join("models");
    let out = bin()
        .args(["search", "--spec"])
        .arg(&spec)
        .arg("--out-dir")
        .arg(&models)
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let mut files: Vec<_> = std::fs::read_dir(&models)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    files.sort();
    assert_eq!(files.len(), 4, "{files:?}");
    assert_eq!(files[0], "model-00000.json");
    for f in &files {
        let doc = format::parse_document(&std::fs::read_to_string(models.join(f)).unwrap()).unwrap();
        format::expect_algebra(&doc).unwrap();
    }

    // the two constant choices are related by the carrier swap, so dedup
    // keeps one representative per constant value
    let out = bin()
        .args(["search", "--spec"])
        .arg(&spec)
        .args(["--dedup"])
        .output()
        .expect("binary runs");
    let text = String::from_utf8_lossy(&out.stdout).into_owned();
    assert!(text.contains("4 models"), "swap does not fix the constant: {text}");
}

#[test]
fn outputs_are_byte_identical_across_runs_and_workers() {
    let dir = tempfile::tempdir().unwrap();
    export_fixtures(dir.path());
    let a = path(dir.path(), "subtr-A.json");
    let x = path(dir.path(), "impl-X.json");

    let first = run(&["hagemann", "--algebra", &a, "--n", "4"]);
    let second = run(&["hagemann", "--algebra", &a, "--n", "4"]);
    assert_eq!(first.stdout, second.stdout);

    let one = run(&["clone", "--algebra", &x, "--workers", "1"]);
    let many = run(&["clone", "--algebra", &x, "--workers", "6"]);
    assert_eq!(one.stdout, many.stdout, "clone listing is worker independent");

    let one = run(&["hm-terms", "--algebra", &x, "--n", "3", "--workers", "1"]);
    let many = run(&["hm-terms", "--algebra", &x, "--n", "3", "--workers", "4"]);
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn fixtures_export_single_to_stdout() {
    let out = run(&["fixtures", "export", "--name", "span-fgst"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = format::parse_document(&stdout(&out)).unwrap();
    match doc.body {
        format::Body::MapBundle { maps } => {
            let names: Vec<&str> = maps.keys().map(|s| s.as_str()).collect();
            assert_eq!(names, ["f", "g", "s", "t"]);
        }
        other => panic!("expected a map bundle, got {}", other.kind()),
    }

    let out = run(&["fixtures", "export", "--name", "identities-perm4"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = format::parse_document(&stdout(&out)).unwrap();
    match doc.body {
        format::Body::Identities { identities } => {
            assert_eq!(identities.identities.len(), 4, "chain of three symbols");
        }
        other => panic!("expected identities, got {}", other.kind()),
    }
}
