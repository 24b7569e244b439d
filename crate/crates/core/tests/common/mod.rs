#![allow(dead_code)]

use rbcoalg_core::oracle::{builtin_fixtures, builtin_fixtures_over, enumerated_comodules};
use rbcoalg_core::{FieldSpec, RBComodule};

/// Comodule fixtures paired with the highest degree whose next coboundary
/// still passes the characteristic guard.
pub fn comodule_fixtures() -> Vec<(String, RBComodule, usize)> {
    let mut out = Vec::new();
    for (name, m) in builtin_fixtures().comodules() {
        out.push((format!("Q/{name}"), m.clone(), 3));
    }
    let f5 = FieldSpec::Prime(5);
    for (name, m) in builtin_fixtures_over(f5).unwrap().comodules() {
        out.push((format!("GF5/{name}"), m.clone(), 2));
    }
    for (name, m) in enumerated_comodules(5, 12).unwrap() {
        out.push((name, m, 2));
    }
    out
}
