mod common;

use common::{fixture, json, path_str, rbcoalg};
use tempfile::TempDir;

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn f(rel: &str) -> String {
    path_str(&fixture(rel)).to_string()
}

fn autpair(field: &str, alpha: &str, beta: &str) -> String {
    format!(
        "{{\"field\": \"{field}\", \"format_version\": \"1\", \"kind\": \"autpair\", \"lambda\": \"0\", \
         \"payload\": {{\"alpha\": {alpha}, \"beta\": {beta}}}}}"
    )
}

#[test]
fn verify_accepts_valid_structures() {
    for rel in ["q/zero.json", "q/two-dim.diag.json", "q/two-dim.diag.line.json", "q/non-abelian.cocycle.json", "q/line-scrambled.json"] {
        let run = rbcoalg(&["verify", &f(rel)]);
        assert_eq!(run.code, 0, "{rel}: {}", run.stdout);
        assert_eq!(json(&run)["result"]["passed"], true);
    }
}

#[test]
fn verify_names_the_broken_equation() {
    let dir = TempDir::new().unwrap();
    let text = std::fs::read_to_string(fixture("q/two-dim.diag.json")).unwrap();
    // Δx = x⊗y + y⊗x is symmetric
    let broken = text.replace("[1, 0, 0, \"-1\"]", "[1, 0, 0, \"1\"]");
    assert_ne!(broken, text);
    let run = rbcoalg(&["verify", &write(&dir, "bad.json", &broken)]);
    assert_eq!(run.code, 1);
    let v = json(&run);
    assert!(v["result"]["failing"].as_array().unwrap().iter().any(|n| n == "(1.1)"));
    let pretty = rbcoalg(&["verify", "--pretty", &write(&dir, "bad.json", &broken)]);
    assert!(pretty.stdout.contains("(1.1)") && pretty.stdout.contains("FAILS"));
    // without --raw other commands refuse it
    let run = rbcoalg(&["dualize", &write(&dir, "bad.json", &broken)]);
    assert_eq!(run.code, 1);
}

#[test]
fn verify_reports_cocycle_equations() {
    let dir = TempDir::new().unwrap();
    let text = std::fs::read_to_string(fixture("q/two-dim.diag.line-cocycle.json")).unwrap();
    // h(m) = x⊗x is not antisymmetric
    let broken = text.replace("\"h\": []", "\"h\": [[0, 0, 0, \"1\"]]");
    assert_ne!(broken, text);
    let run = rbcoalg(&["verify", &write(&dir, "z.json", &broken)]);
    assert_eq!(run.code, 1, "{}", run.stdout);
    let failing = json(&run)["result"]["failing"].clone();
    assert!(failing.as_array().unwrap().iter().all(|n| n.as_str().unwrap().starts_with("(n")), "{failing}");
}

#[test]
fn parse_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    for text in [
        "not json",
        "{}",
        r#"{"field": "Q", "format_version": "2", "kind": "coalgebra", "lambda": "0", "payload": {}}"#,
        r#"{"field": "GF(4)", "format_version": "1", "kind": "coalgebra", "lambda": "0", "payload": {}}"#,
        r#"{"field": "Q", "format_version": "1", "kind": "coalgebra", "lambda": "0",
            "payload": {"basis": ["x"], "delta": [[0, 0, 1, "1"]], "r": [["0"]]}}"#,
        r#"{"field": "Q", "format_version": "1", "kind": "coalgebra", "lambda": "1/0",
            "payload": {"basis": ["x"], "delta": [], "r": [["0"]]}}"#,
    ] {
        let run = rbcoalg(&["verify", &write(&dir, "x.json", text)]);
        assert_eq!(run.code, 2, "{text}: {}", run.stderr);
        assert_eq!(json(&run)["status"], "parse-error");
    }
    assert_eq!(rbcoalg(&["verify", "/nonexistent/file.json"]).code, 2);
    assert_eq!(rbcoalg(&["verify", "--field", "GF(5)", &f("q/zero.json")]).code, 2);
    assert_eq!(rbcoalg(&["frobnicate"]).code, 2);
}

fn dims(run: &common::Run) -> (u64, u64, u64) {
    let r = &json(run)["result"];
    (r["dim_z"].as_u64().unwrap(), r["dim_b"].as_u64().unwrap(), r["dim_h"].as_u64().unwrap())
}

#[test]
fn cohomology_reports_dimensions() {
    let run = rbcoalg(&["cohomology", &f("q/zero.json"), "--n", "1", "--complex", "plain"]);
    assert_eq!(run.code, 0);
    assert_eq!(dims(&run), (4, 0, 4));
    let run = rbcoalg(&["cohomology", &f("q/two-dim.diag.adjoint.json"), "--n", "2"]);
    assert_eq!(dims(&run), (5, 3, 2));
    let run = rbcoalg(&["cohomology", &f("q/two-dim.diag.json"), &f("q/two-dim.diag.adjoint.json"), "--n", "1"]);
    assert_eq!(dims(&run), (3, 2, 1));
    let run = rbcoalg(&["cohomology", &f("gf5/two-dim.diag.line.json"), "--n", "2", "--complex", "rb"]);
    assert_eq!(dims(&run), (3, 1, 2));
}

#[test]
fn characteristic_guard_exits_with_three() {
    let run = rbcoalg(&["cohomology", &f("gf5/two-dim.diag.line.json"), "--n", "4"]);
    assert_eq!(run.code, 3, "{}", run.stdout);
    assert_eq!(json(&run)["status"], "characteristic-guard");
}

#[test]
fn extend_and_cocycle_of_round_trip() {
    let dir = TempDir::new().unwrap();
    for rel in ["q/two-dim.diag.zero-cocycle.json", "q/two-dim.diag.line-cocycle.json", "q/non-abelian.cocycle.json"] {
        let ext = dir.path().join("x.json");
        assert_eq!(rbcoalg(&["extend", &f(rel), "--output", path_str(&ext)]).code, 0);
        assert_eq!(rbcoalg(&["verify", path_str(&ext)]).code, 0);
        let back = rbcoalg(&["cocycle-of", path_str(&ext)]);
        assert_eq!(back.code, 0);
        assert_eq!(back.stdout, std::fs::read_to_string(fixture(rel)).unwrap(), "{rel}");
    }
}

#[test]
fn zero_cocycle_extends_to_the_direct_sum() {
    let run = rbcoalg(&["extend", &f("q/two-dim.diag.zero-cocycle.json")]);
    let v: serde_json::Value = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(v["kind"], "extension");
    // Δ_E has exactly the two triples of Δ_C
    assert_eq!(v["payload"]["e"]["delta"].as_array().unwrap().len(), 2);
}

#[test]
fn seeded_scrambling_is_deterministic_and_equivalent() {
    let dir = TempDir::new().unwrap();
    let z = f("q/two-dim.diag.line-cocycle.json");
    let a = rbcoalg(&["extend", &z, "--seed", "7"]);
    let b = rbcoalg(&["extend", &z, "--seed", "7"]);
    let plain = rbcoalg(&["extend", &z]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, plain.stdout);
    let x = write(&dir, "x.json", &a.stdout);
    assert_eq!(rbcoalg(&["verify", &x]).code, 0);
    let z2 = dir.path().join("z2.json");
    assert_eq!(rbcoalg(&["cocycle-of", &x, "-o", path_str(&z2)]).code, 0);
    let witness = dir.path().join("w.json");
    let run = rbcoalg(&["equivalent", &z, path_str(&z2), "--output", path_str(&witness)]);
    assert_eq!(run.code, 0, "{}", run.stdout);
    let w = rbcoalg(&["verify", path_str(&witness)]);
    assert_eq!(json(&w)["result"]["kind"], "witness");
}

fn gf3_cocycle(dir: &TempDir, class: usize) -> String {
    let out = dir.path().join(format!("z{class}.json"));
    let run = rbcoalg(&["cocycle-of", &f(&format!("gf3/semidirect/lines.class{class}.json")), "-o", path_str(&out)]);
    assert_eq!(run.code, 0);
    path_str(&out).to_string()
}

#[test]
fn inequivalent_cocycles_exit_with_one() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (gf3_cocycle(&dir, 0), gf3_cocycle(&dir, 1));
    let run = rbcoalg(&["equivalent", &a, &b]);
    assert_eq!(run.code, 1);
    assert_eq!(json(&run)["result"]["equivalent"], false);
    assert_eq!(rbcoalg(&["equivalent", &a, &a]).code, 0);
}

#[test]
fn identity_pair_is_extensible_with_zero_witness() {
    let dir = TempDir::new().unwrap();
    let pair = write(&dir, "p.json", &autpair("Q", "[[\"1\", \"0\"], [\"0\", \"1\"]]", "[[\"1\"]]"));
    let x = f("q/line-semidirect.json");
    let run = rbcoalg(&["extensible", &x, &pair]);
    assert_eq!(run.code, 0, "{}", run.stdout);
    let v = json(&run);
    assert_eq!(v["result"]["extensible"], true);
    assert_eq!(v["result"]["witness"], serde_json::json!([["0"], ["0"]]));
    assert!(v["result"]["equations"].as_array().unwrap().iter().all(|e| e["holds"] == true));
    assert_eq!(rbcoalg(&["wells", &x, &pair]).code, 0);
}

#[test]
fn extensibility_and_wells_agree_on_every_pair() {
    let dir = TempDir::new().unwrap();
    let x = f("gf3/semidirect/lines.class4.json");
    let mut refused = 0;
    for a in ["1", "2"] {
        for b in ["1", "2"] {
            let pair = write(&dir, "p.json", &autpair("GF(3)", &format!("[[\"{a}\"]]"), &format!("[[\"{b}\"]]")));
            let e = rbcoalg(&["extensible", &x, &pair]);
            let w = rbcoalg(&["wells", &x, &pair]);
            assert_eq!(e.code, w.code, "α={a} β={b}");
            assert_eq!(json(&e)["result"]["extensible"], json(&w)["result"]["zero"]);
            refused += (e.code == 1) as usize;
        }
    }
    assert!(refused > 0);
}

#[test]
fn non_automorphism_pairs_are_rejected() {
    let dir = TempDir::new().unwrap();
    let pair = write(&dir, "p.json", &autpair("GF(3)", "[[\"0\"]]", "[[\"1\"]]"));
    assert_eq!(rbcoalg(&["extensible", &f("gf3/semidirect/lines.class4.json"), &pair]).code, 1);
}

#[test]
fn classify_counts_and_budget() {
    let run = rbcoalg(&["classify", "--field", "GF(3)", "--lambda", "0"]);
    assert_eq!(run.code, 0, "{}", run.stdout);
    let v = json(&run);
    assert_eq!((v["result"]["cocycles"].as_u64(), v["result"]["classes"].as_u64()), (Some(9), Some(9)));
    let run = rbcoalg(&["classify", "--field", "GF(3)", "--budget", "10"]);
    assert_eq!(run.code, 4);
    let v = json(&run);
    assert_eq!(v["status"], "search-budget-exceeded");
    assert_eq!(v["needed"], "27");
    let c = f("q/zero.json");
    assert_eq!(rbcoalg(&["classify", &c, &c]).code, 2);
}

#[test]
fn budget_can_come_from_the_environment() {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_rbcoalg"))
        .args(["classify", "--field", "3"])
        .env("RBCOALG_BUDGET", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn wells_sequence_report_is_exact() {
    for rel in ["gf3/semidirect/lines.class4.json", "gf3/semidirect/non-abelian.semidirect.json", "gf2/semidirect/lines.class1.json"] {
        let run = rbcoalg(&["wells-sequence", &f(rel)]);
        assert_eq!(run.code, 0, "{rel}: {}", run.stdout);
        assert_eq!(json(&run)["result"]["exact"], true);
    }
    let run = rbcoalg(&["wells-sequence", &f("q/line-semidirect.json")]);
    assert_eq!(run.code, 2, "automorphism groups over Q are not enumerable");
}

#[test]
fn dualize_emits_an_algebra() {
    let run = rbcoalg(&["dualize", &f("q/two-dim.diag.json")]);
    assert_eq!(run.code, 0);
    let v: serde_json::Value = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(v["kind"], "algebra");
    assert_eq!(v["payload"]["bracket"], serde_json::json!([[0, 1, 0, "1"], [1, 0, 0, "-1"]]));
}

#[test]
fn reports_embed_version_and_field() {
    let run = rbcoalg(&["verify", &f("gf5/zero.json")]);
    let v = json(&run);
    assert_eq!(v["format_version"], "1");
    assert_eq!(v["field"], "GF(5)");
}
