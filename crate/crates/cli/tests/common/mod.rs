#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

use rbcoalg::format::{emit, Document, ExtensionParts, Payload};
use rbcoalg_core::oracle::{builtin_fixtures_over, semidirect_fixtures, Fixture};
use rbcoalg_core::FieldSpec;

pub fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn fixture(rel: &str) -> PathBuf {
    fixture_dir().join(rel)
}

fn file_name(name: &str) -> String {
    format!("{}.json", name.replace('/', "."))
}

fn payload(fx: &Fixture) -> Payload {
    match fx {
        Fixture::Coalgebra(c) => Payload::Coalgebra(c.clone()),
        Fixture::Comodule(m) => Payload::Comodule(m.clone()),
        Fixture::Cocycle(z) => Payload::Cocycle(z.clone()),
        Fixture::Extension(x) => Payload::Extension(ExtensionParts::from_extension(x)),
    }
}

/// `(relative path, canonical text)` for every shipped fixture file.
pub fn expected_fixture_files() -> Vec<(String, String)> {
    let mut out = Vec::new();
    for (dir, f) in [("q", FieldSpec::Rationals), ("gf5", FieldSpec::Prime(5))] {
        for entry in builtin_fixtures_over(f).unwrap().entries() {
            let doc = Document::new(payload(&entry.fixture));
            out.push((format!("{dir}/{}", file_name(&entry.name)), emit(&doc)));
        }
    }
    for p in [2, 3] {
        for (name, x) in semidirect_fixtures(p).unwrap() {
            let name = name.trim_start_matches(&format!("gf{p}/")).to_string();
            let doc = Document::new(Payload::Extension(ExtensionParts::from_extension(&x)));
            out.push((format!("gf{p}/semidirect/{}", file_name(&name)), emit(&doc)));
        }
    }
    out
}

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn rbcoalg(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_rbcoalg"))
        .args(args)
        .env_remove("RBCOALG_BUDGET")
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

pub fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

pub fn json(run: &Run) -> serde_json::Value {
    serde_json::from_str(&run.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {}", run.stdout))
}
