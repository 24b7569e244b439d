use crate::coalgebra::RBLieCoalgebra;
use crate::comodule::RBComodule;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::extension::{act, classify_small, ExtensionSES, NonAbelianCocycle};
use crate::matrix::Matrix;
use crate::scalar::FieldSpec;
use crate::tensor::{kron, LinearMap, Signature, Space};

use super::enumerate::{comodules_on, rb_operators};

#[derive(Clone, Debug)]
pub enum Fixture {
    Coalgebra(RBLieCoalgebra),
    Comodule(RBComodule),
    Cocycle(NonAbelianCocycle),
    Extension(ExtensionSES),
}

impl Fixture {
    pub fn kind(&self) -> &'static str {
        match self {
            Fixture::Coalgebra(_) => "coalgebra",
            Fixture::Comodule(_) => "comodule",
            Fixture::Cocycle(_) => "cocycle",
            Fixture::Extension(_) => "extension",
        }
    }

    /// Runs the checkers appropriate to the bundle.
    pub fn passes_checks(&self) -> bool {
        match self {
            Fixture::Coalgebra(c) => c.check().all(),
            Fixture::Comodule(m) => m.base().check().all() && m.check().all(),
            Fixture::Cocycle(z) => z.c().check().all() && z.m().check().all() && z.check().all(),
            Fixture::Extension(x) => {
                ExtensionSES::new(x.c.clone(), x.m.clone(), x.e.clone(), x.f.clone(), x.g.clone()).is_ok()
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct FixtureEntry {
    pub name: String,
    pub note: String,
    pub fixture: Fixture,
}

/// Named structure bundles; every entry passed its checkers on insertion.
#[derive(Clone, Debug, Default)]
pub struct FixtureCatalog {
    entries: Vec<FixtureEntry>,
}

impl FixtureCatalog {
    pub fn push(&mut self, name: impl Into<String>, note: impl Into<String>, fixture: Fixture) -> Result<()> {
        let name = name.into();
        if !fixture.passes_checks() {
            return Err(Error::AxiomViolation(format!("fixture {name} fails its checkers")));
        }
        self.entries.push(FixtureEntry { name, note: note.into(), fixture });
        Ok(())
    }

    pub fn entries(&self) -> &[FixtureEntry] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Option<&Fixture> {
        self.entries.iter().find(|e| e.name == name).map(|e| &e.fixture)
    }

    pub fn names(&self) -> Vec<&str> {
        self.entries.iter().map(|e| e.name.as_str()).collect()
    }

    pub fn coalgebras(&self) -> Vec<(&str, &RBLieCoalgebra)> {
        self.entries
            .iter()
            .filter_map(|e| match &e.fixture {
                Fixture::Coalgebra(c) => Some((e.name.as_str(), c)),
                _ => None,
            })
            .collect()
    }

    pub fn comodules(&self) -> Vec<(&str, &RBComodule)> {
        self.entries
            .iter()
            .filter_map(|e| match &e.fixture {
                Fixture::Comodule(m) => Some((e.name.as_str(), m)),
                _ => None,
            })
            .collect()
    }

    pub fn cocycles(&self) -> Vec<(&str, &NonAbelianCocycle)> {
        self.entries
            .iter()
            .filter_map(|e| match &e.fixture {
                Fixture::Cocycle(z) => Some((e.name.as_str(), z)),
                _ => None,
            })
            .collect()
    }

    pub fn extensions(&self) -> Vec<(&str, &ExtensionSES)> {
        self.entries
            .iter()
            .filter_map(|e| match &e.fixture {
                Fixture::Extension(x) => Some((e.name.as_str(), x)),
                _ => None,
            })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn map(f: FieldSpec, dom: &Space, cod: Signature, rows: &[&[i64]]) -> LinearMap {
    LinearMap::new(dom.into(), cod, Matrix::from_i64(f, rows)).expect("fixture shapes")
}

/// One-dimensional coalgebra with `Δ = 0` and `R = r`.
pub fn line(f: FieldSpec, label: &str, r: i64, lambda: i64) -> RBLieCoalgebra {
    let s = Space::new(vec![label.to_string()]).expect("one label");
    let delta = LinearMap::zero(f, &s, Signature::power(&s, 2));
    let rm = LinearMap::scalar(&f.from_i64(r), &s);
    RBLieCoalgebra::new(s, delta, rm, f.from_i64(lambda)).expect("Δ = 0 satisfies every axiom")
}

/// `Δ(x) = x⊗y − y⊗x`, `Δ(y) = 0` with the given `R` in basis `(x, y)`.
pub fn two_dim(f: FieldSpec, r: [[i64; 2]; 2], lambda: i64) -> Result<RBLieCoalgebra> {
    let c = Space::new(vec!["x".into(), "y".into()])?;
    let delta = map(f, &c, Signature::power(&c, 2), &[&[0, 0], &[1, 0], &[-1, 0], &[0, 0]]);
    let r = map(f, &c, (&c).into(), &[&r[0], &r[1]]);
    RBLieCoalgebra::new(c, delta, r, f.from_i64(lambda))
}

/// Dual of `sl₂` in basis `(e, h, f)` with `R = diag(−1, −1, 0)`, `λ = 1`;
/// `R` is minus the projection onto the subalgebra `span(e, h)` along `span(f)`.
pub fn sl2_dual(f: FieldSpec) -> Result<RBLieCoalgebra> {
    let c = Space::new(vec!["e".into(), "h".into(), "f".into()])?;
    // [a, b] = Σ_k c^k_ab k, stored at row 3a + b, column k
    let mut m = Matrix::zeros(f, 9, 3);
    let mut set = |a: usize, b: usize, k: usize, v: i64| m.set(3 * a + b, k, f.from_i64(v));
    set(1, 0, 0, 2);
    set(0, 1, 0, -2);
    set(1, 2, 2, -2);
    set(2, 1, 2, 2);
    set(0, 2, 1, 1);
    set(2, 0, 1, -1);
    let delta = LinearMap::new((&c).into(), Signature::power(&c, 2), m)?;
    let r = map(f, &c, (&c).into(), &[&[-1, 0, 0], &[0, -1, 0], &[0, 0, 0]]);
    RBLieCoalgebra::new(c, delta, r, f.one())
}

/// `M = k¹` over `c` with `ρ(m) = a·m⊗y`-style coaction given as coefficients
/// on the basis of `C`, and `R_M = r`.
fn line_comodule(c: &RBLieCoalgebra, label: &str, coeffs: &[i64], r: i64) -> Result<RBComodule> {
    let f = c.field();
    let m = Space::new(vec![label.to_string()])?;
    let rows: Vec<Vec<i64>> = coeffs.iter().map(|&a| vec![a]).collect();
    let rows: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    let rho = map(f, &m, Signature::new(vec![m.clone(), c.space().clone()]), &rows);
    RBComodule::new(c.clone(), m.clone(), rho, LinearMap::scalar(&f.from_i64(r), &m))
}

/// Conjugates an extension by a change of basis `P` of `E`.
pub fn scramble(x: &ExtensionSES, p: &LinearMap) -> Result<ExtensionSES> {
    let pi = p.inverse().ok_or(Error::NotInvertible)?;
    let e = &x.e;
    let delta = &(&kron(p, p) * e.delta()) * &pi;
    let r = &(&(p * e.r()) * &pi);
    let s = Space::standard("e", e.dim());
    let e2 = RBLieCoalgebra::new(
        s.clone(),
        delta.with_signatures((&s).into(), Signature::power(&s, 2))?,
        r.with_signatures((&s).into(), (&s).into())?,
        e.lambda().clone(),
    )?;
    let f2 = (p * &x.f).with_signatures(x.c.space().into(), (&s).into())?;
    let g2 = (&x.g * &pi).with_signatures((&s).into(), x.m.space().into())?;
    ExtensionSES::new(x.c.clone(), x.m.clone(), e2, f2, g2)
}

fn unimodular3(f: FieldSpec) -> Result<LinearMap> {
    let s = Space::standard("e", 3);
    LinearMap::new((&s).into(), (&s).into(), Matrix::from_i64(f, &[&[1, 1, 0], &[0, 1, 0], &[1, 2, 1]]))
}

/// The builtin catalog over `ℚ`.
pub fn builtin_fixtures() -> FixtureCatalog {
    builtin_fixtures_over(FieldSpec::Rationals).expect("builtin fixtures are valid over Q")
}

/// The builtin catalog over any field; `sl2-dual` is skipped in
/// characteristic 2.
pub fn builtin_fixtures_over(f: FieldSpec) -> Result<FixtureCatalog> {
    let mut cat = FixtureCatalog::default();
    let zero = RBLieCoalgebra::zero(Space::standard("z", 2), f.one());
    let r0 = two_dim(f, [[0, 0], [0, 0]], 2)?;
    let minus = two_dim(f, [[-3, 0], [0, -3]], 3)?;
    let diag = two_dim(f, [[1, 0], [0, 0]], -1)?;
    let mut coalgebras = vec![
        ("zero", "Δ = 0, R = 0, λ = 1", zero),
        ("two-dim/r0", "Δx = x⊗y − y⊗x, R = 0, λ = 2", r0),
        ("two-dim/minus-lambda", "Δx = x⊗y − y⊗x, R = −λI, λ = 3", minus),
        ("two-dim/diag", "Δx = x⊗y − y⊗x, R = diag(1,0), λ = −1", diag.clone()),
    ];
    if f.characteristic() != 2 {
        coalgebras.push(("sl2-dual", "dual of sl2, R = diag(−1,−1,0), λ = 1", sl2_dual(f)?));
    }
    for (name, note, c) in &coalgebras {
        cat.push(*name, *note, Fixture::Coalgebra(c.clone()))?;
    }
    for (name, _, c) in &coalgebras {
        let adj = RBComodule::adjoint(c);
        cat.push(format!("{name}/adjoint"), "adjoint comodule", Fixture::Comodule(adj.clone()))?;
        cat.push(
            format!("{name}/derived-adjoint"),
            "derived pair of the adjoint comodule",
            Fixture::Comodule(adj.derived()?),
        )?;
    }
    cat.push(
        "two-dim/diag/line",
        "M = k¹, ρ(m) = m⊗y, R_M = 0",
        Fixture::Comodule(line_comodule(&diag, "m", &[0, 1], 0)?),
    )?;
    cat.push(
        "two-dim/diag/trivial",
        "M = k¹ with zero coaction",
        Fixture::Comodule(RBComodule::trivial(diag.clone(), Space::standard("m", 1))),
    )?;

    let m1 = line(f, "m", 0, -1);
    let z0 = NonAbelianCocycle::zero(diag.clone(), m1.clone())?;
    cat.push("two-dim/diag/zero-cocycle", "(h, ρ, φ) = 0", Fixture::Cocycle(z0.clone()))?;
    let direct = ExtensionSES::from_cocycle(&z0)?;
    cat.push("direct-sum", "C ⊕ M with the zero cocycle", Fixture::Extension(direct))?;

    let rho = line_comodule(&diag, "m", &[0, 1], 0)?.rho().clone();
    let zl = z0.with_maps(z0.h().clone(), rho, z0.phi().clone())?;
    cat.push("two-dim/diag/line-cocycle", "ρ(m) = m⊗y, h = 0, φ = 0", Fixture::Cocycle(zl.clone()))?;
    let semi = ExtensionSES::from_cocycle(&zl)?;
    cat.push("line-semidirect", "semidirect coalgebra of the line cocycle", Fixture::Extension(semi.clone()))?;
    cat.push(
        "line-scrambled",
        "line semidirect in a unimodular change of basis",
        Fixture::Extension(scramble(&semi, &unimodular3(f)?)?),
    )?;

    let c1 = line(f, "c", 0, -1);
    let zn0 = NonAbelianCocycle::zero(c1.clone(), diag.clone())?;
    let v = LinearMap::from_vec(diag.space().into(), c1.space().into(), f, &[f.one(), f.zero()]);
    let zn = act(&zn0, &v)?;
    let zn = zn0.with_maps(zn.h().clone(), zn.rho().clone(), zn.phi().clone())?;
    cat.push("non-abelian/cocycle", "translate of zero by φ(x) = c", Fixture::Cocycle(zn.clone()))?;
    cat.push(
        "non-abelian/semidirect",
        "semidirect coalgebra with non-abelian kernel",
        Fixture::Extension(ExtensionSES::from_cocycle(&zn)?),
    )?;
    Ok(cat)
}

/// Comodules over `GF(p)` found by enumeration: every RB operator of the
/// two-dimensional coalgebra at weights `λ ∈ {1, −1}`, each paired with at
/// most two of its one-dimensional comodules.
pub fn enumerated_comodules(p: u32, limit: usize) -> Result<Vec<(String, RBComodule)>> {
    let f = FieldSpec::prime(p)?;
    let mut out = Vec::new();
    for lambda in [1, -1] {
        let base = two_dim(f, [[0, 0], [0, 0]], lambda)?;
        for (i, r) in rb_operators(&base, 1 << 20)?.into_iter().enumerate() {
            let c = base.with_r(r)?;
            let found = comodules_on(&c, 1, 1 << 20)?;
            // a zero-coaction example and the first non-trivial one per operator
            let picks = found.iter().enumerate().filter(|(j, m)| *j == 0 || !m.rho().is_zero()).take(2);
            for (j, m) in picks {
                out.push((format!("gf{p}/lambda{lambda}/r{i}/m{j}"), m.clone()));
                if out.len() >= limit {
                    return Ok(out);
                }
            }
        }
    }
    Ok(out)
}

/// Semidirect extensions over `GF(p)`: one per equivalence class of
/// cocycles on `k¹` by `k¹` with zero structures, plus the line and
/// non-abelian fixtures when `p` is odd.
pub fn semidirect_fixtures(p: u32) -> Result<Vec<(String, ExtensionSES)>> {
    let f = FieldSpec::prime(p)?;
    let c = line(f, "c", 0, 0);
    let m = line(f, "m", 0, 0);
    let report = classify_small(&c, &m, 1 << 16, Exec::default())?;
    let mut out = Vec::new();
    for (i, z) in report.representatives.iter().enumerate() {
        out.push((format!("gf{p}/lines/class{i}"), ExtensionSES::from_cocycle(z)?));
    }
    if p != 2 {
        let cat = builtin_fixtures_over(f)?;
        for name in ["line-semidirect", "non-abelian/semidirect"] {
            if let Some(Fixture::Extension(x)) = cat.get(name) {
                out.push((format!("gf{p}/{name}"), x.clone()));
            }
        }
    }
    Ok(out)
}
