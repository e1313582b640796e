use std::path::{Path, PathBuf};

use spinstat::cli::run;

fn path(rel: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join(rel).to_str().unwrap().to_string()
}

fn spinstat(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["spinstat"];
    full.extend_from_slice(args);
    let code = run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn schema() -> jsonschema::JSONSchema {
    let text = std::fs::read_to_string(path("schema/report.schema.json")).unwrap();
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    jsonschema::JSONSchema::compile(&value).unwrap()
}

#[test]
fn analyze_exit_codes() {
    let cases = [
        ("theories/majorana.th", 0, "CONSISTENT"),
        ("theories/dirac.th", 0, "CONSISTENT"),
        ("theories/doubled_scalar.th", 0, "CONSISTENT"),
        ("theories/majorana_bose.th", 2, "CONTRADICTION"),
        ("theories/scalar_flavor_antisym.th", 3, "REJECTED_NEGATIVE_NORM"),
        ("theories/single_scalar.th", 4, "NO_KINEMATIC_TERM"),
    ];
    for (file, code, token) in cases {
        let (got, out, _) = spinstat(&["analyze", &path(file)]);
        assert_eq!(got, code, "{file}");
        assert!(out.ends_with(&format!("status {token}\n")), "{file}: {out}");
    }
}

#[test]
fn missing_file_is_an_error() {
    let (code, out, err) = spinstat(&["analyze", "no/such/theory.th"]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.starts_with("error:"));
}

#[test]
fn malformed_theory_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.th");
    std::fs::write(&file, "theory bad\nfield phi spin=7/3\n").unwrap();
    let (code, _, err) = spinstat(&["analyze", file.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("error"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(spinstat(&["frobnicate"]).0, 1);
    assert_eq!(spinstat(&["dkp-check", "--metric", "++"]).0, 1);
    let (code, out, _) = spinstat(&["--help"]);
    assert_eq!(code, 0);
    for sub in ["analyze", "dkp-check", "fock"] {
        assert!(out.contains(sub));
    }
}

#[test]
fn json_reports_match_schema() {
    let schema = schema();
    let mut files: Vec<PathBuf> =
        std::fs::read_dir(path("theories")).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    assert!(files.len() >= 7);
    for f in files {
        let (_, out, _) = spinstat(&["--json", "-", "analyze", f.to_str().unwrap()]);
        let value: serde_json::Value = serde_json::from_str(&out).unwrap();
        if let Err(errors) = schema.validate(&value) {
            let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
            panic!("{}: {}", f.display(), msgs.join("; "));
        };
    }
}

#[test]
fn json_file_and_text_agree() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("r.json");
    let (code, text, _) = spinstat(&["analyze", &path("theories/scalar_flavor_antisym.th"), "--json", target.to_str().unwrap()]);
    assert_eq!(code, 3);
    let value: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(value["status"], "REJECTED_NEGATIVE_NORM");
    assert!(text.contains("witness b2dag|0>: squared norm -1"));
    assert_eq!(value["flavor"][0]["witness"]["squared_norm"], "-1+0i");
    assert_eq!(value["flavor"][0]["sector_signs"], serde_json::json!([1, -1]));
}

#[test]
fn fock_vacuum_expectations() {
    let table = path("tables/fermion_negative.rel");
    let (code, out, _) = spinstat(&["fock", &table, "--word", "c ddag"]);
    assert_eq!(code, 0);
    assert!(out.contains("vacuum expectation: -1\n"), "{out}");
    let (_, out, _) = spinstat(&["fock", &path("tables/boson.rel"), "--word", "bdag a"]);
    assert!(out.contains("vacuum expectation: 0\n"), "{out}");
    assert!(out.contains("normal form: bdag a\n"), "{out}");
}

#[test]
fn fock_gram_signatures() {
    let states = path("tables/two_states.txt");
    let (_, out, _) = spinstat(&["fock", &path("tables/fermion.rel"), "--word", "a bdag", "--gram", &states]);
    assert!(out.contains("signature: (2, 0, 0)"), "{out}");
    let (_, out, _) = spinstat(&["fock", &path("tables/fermion_negative.rel"), "--word", "a bdag", "--gram", &states]);
    assert!(out.contains("gram row 1: [0, -1]"), "{out}");
    assert!(out.contains("signature: (1, 1, 0)"), "{out}");
}

#[test]
fn fock_rejects_unknown_symbols() {
    let (code, _, err) = spinstat(&["fock", &path("tables/boson.rel"), "--word", "a zdag"]);
    assert_eq!(code, 1);
    assert!(err.contains("zdag"), "{err}");
}

#[test]
fn dkp_check_metrics() {
    let (code, out, _) = spinstat(&["dkp-check"]);
    assert_eq!(code, 0);
    assert!(out.contains("standard relation: 64/64 triples pass"));
    assert!(out.ends_with("status PASS\n"));
    let (code, out, _) = spinstat(&["dkp-check", "--metric", "-+++"]);
    assert_eq!(code, 2);
    assert!(out.ends_with("status FAIL\n"));
}

#[test]
fn dkp_check_printed_relations() {
    let (code, out, _) = spinstat(&["dkp-check", "--paper-relations"]);
    assert_eq!(code, 0);
    assert!(out.contains("printed relations:"));
    assert!(out.contains("mismatch with printed form"));
    let (_, json, _) = spinstat(&["--json", "-", "dkp-check", "--paper-relations"]);
    let value: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(value["minimal_polynomial"].as_array().unwrap().len(), 8);
}
