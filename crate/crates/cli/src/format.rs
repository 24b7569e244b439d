//! JSON documents.
//!
//! Every file is an envelope
//!
//! ```json
//! {"field": "GF(5)", "format_version": "1", "kind": "coalgebra", "lambda": "-1", "payload": {...}}
//! ```
//!
//! Keys are sorted and scalars are canonical strings. Maps into a two-fold
//! tensor product are sparse lists `[i, j, k, "coeff"]` giving the
//! `e_i ⊗ e_j` coefficient of the image of `e_k`; every other map is a dense
//! row-major array of rows (one row per codomain basis vector).

use rbcoalg_core::extension::{EquivalenceWitness, ExtensionSES, NonAbelianCocycle};
use rbcoalg_core::wells::AutPair;
use rbcoalg_core::{FieldSpec, LinearMap, Matrix, RBComodule, RBLieAlgebra, RBLieCoalgebra, Scalar, Signature, Space};
use serde_json::{json, Map, Value};
use thiserror::Error;

pub const FORMAT_VERSION: &str = "1";

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("missing key {0:?}")]
    Missing(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Engine(#[from] rbcoalg_core::Error),
}

type Result<T> = std::result::Result<T, FormatError>;

/// The structure inside an envelope.
#[derive(Clone, Debug)]
pub enum Payload {
    Coalgebra(RBLieCoalgebra),
    Comodule(RBComodule),
    Cocycle(NonAbelianCocycle),
    Extension(ExtensionParts),
    AutPair(AutPair),
    Witness(EquivalenceWitness),
    /// Output of `dualize`; never read back.
    Algebra(RBLieAlgebra),
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::Coalgebra(_) => "coalgebra",
            Payload::Comodule(_) => "comodule",
            Payload::Cocycle(_) => "cocycle",
            Payload::Extension(_) => "extension",
            Payload::AutPair(_) => "autpair",
            Payload::Witness(_) => "witness",
            Payload::Algebra(_) => "algebra",
        }
    }
}

/// An extension as written in a file. The sequence conditions are only
/// enforced by [`ExtensionParts::build`], so `verify` can report on a broken
/// one.
#[derive(Clone, Debug)]
pub struct ExtensionParts {
    pub c: RBLieCoalgebra,
    pub m: RBLieCoalgebra,
    pub e: RBLieCoalgebra,
    pub f: LinearMap,
    pub g: LinearMap,
    pub t: Option<LinearMap>,
    pub s: Option<LinearMap>,
}

impl ExtensionParts {
    pub fn build(&self) -> rbcoalg_core::Result<ExtensionSES> {
        let x = ExtensionSES::new(self.c.clone(), self.m.clone(), self.e.clone(), self.f.clone(), self.g.clone())?;
        let Some(t) = &self.t else { return Ok(x) };
        let x = x.with_retraction(t.clone())?;
        if let Some(s) = &self.s {
            if x.s.as_ref() != Some(s) {
                return Err(rbcoalg_core::Error::MembershipViolation("section does not match the retraction".into()));
            }
        }
        Ok(x)
    }

    pub fn from_extension(x: &ExtensionSES) -> Self {
        ExtensionParts {
            c: x.c.clone(),
            m: x.m.clone(),
            e: x.e.clone(),
            f: x.f.clone(),
            g: x.g.clone(),
            t: x.t.clone(),
            s: x.s.clone(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Document {
    pub field: FieldSpec,
    pub lambda: Scalar,
    pub payload: Payload,
}

impl Document {
    pub fn new(payload: Payload) -> Self {
        let lambda = match &payload {
            Payload::Coalgebra(c) => c.lambda().clone(),
            Payload::Comodule(m) => m.base().lambda().clone(),
            Payload::Cocycle(z) => z.c().lambda().clone(),
            Payload::Extension(x) => x.c.lambda().clone(),
            Payload::Algebra(a) => a.lambda.clone(),
            Payload::AutPair(p) => p.alpha.field().zero(),
            Payload::Witness(w) => w.varphi.field().zero(),
        };
        Document { field: lambda.field(), lambda, payload }
    }

    /// Pairs and witnesses carry no λ of their own; take it from context.
    pub fn with_lambda(mut self, lambda: &Scalar) -> Self {
        self.lambda = lambda.clone();
        self
    }
}

/// Canonical text of a document, newline terminated.
pub fn emit(doc: &Document) -> String {
    canonical_text(&to_value(doc))
}

/// Two-space indented JSON with sorted keys; arrays of plain values stay on
/// one line, so every triple and every matrix row is a single line.
pub fn canonical_text(v: &Value) -> String {
    let mut out = String::new();
    write_value(v, 0, &mut out);
    out.push('\n');
    out
}

fn write_value(v: &Value, indent: usize, out: &mut String) {
    let leaf = |x: &Value| !matches!(x, Value::Array(_) | Value::Object(_));
    match v {
        Value::Object(o) if !o.is_empty() => {
            out.push_str("{\n");
            for (i, (k, x)) in o.iter().enumerate() {
                out.push_str(&" ".repeat(indent + 2));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(x, indent + 2, out);
                out.push_str(if i + 1 < o.len() { ",\n" } else { "\n" });
            }
            out.push_str(&" ".repeat(indent));
            out.push('}');
        }
        Value::Array(a) if !a.is_empty() && !a.iter().all(leaf) => {
            out.push_str("[\n");
            for (i, x) in a.iter().enumerate() {
                out.push_str(&" ".repeat(indent + 2));
                write_value(x, indent + 2, out);
                out.push_str(if i + 1 < a.len() { ",\n" } else { "\n" });
            }
            out.push_str(&" ".repeat(indent));
            out.push(']');
        }
        Value::Array(a) => {
            let items: Vec<String> = a.iter().map(Value::to_string).collect();
            out.push('[');
            out.push_str(&items.join(", "));
            out.push(']');
        }
        _ => out.push_str(&v.to_string()),
    }
}

pub fn to_value(doc: &Document) -> Value {
    let payload = match &doc.payload {
        Payload::Coalgebra(c) => coalgebra_value(c),
        Payload::Comodule(m) => json!({
            "basis": m.space().labels(),
            "coalgebra": coalgebra_value(m.base()),
            "r_m": dense(m.r_m()),
            "rho": sparse(m.rho(), m.base().dim()),
        }),
        Payload::Cocycle(z) => json!({
            "c": coalgebra_value(z.c()),
            "h": sparse(z.h(), z.c().dim()),
            "m": coalgebra_value(z.m()),
            "phi": dense(z.phi()),
            "rho": sparse(z.rho(), z.c().dim()),
        }),
        Payload::Extension(x) => {
            let mut o = Map::new();
            o.insert("c".into(), coalgebra_value(&x.c));
            o.insert("m".into(), coalgebra_value(&x.m));
            o.insert("e".into(), coalgebra_value(&x.e));
            o.insert("f".into(), dense(&x.f));
            o.insert("g".into(), dense(&x.g));
            if let Some(t) = &x.t {
                o.insert("t".into(), dense(t));
            }
            if let Some(s) = &x.s {
                o.insert("s".into(), dense(s));
            }
            Value::Object(o)
        }
        Payload::AutPair(p) => json!({ "alpha": dense(&p.alpha), "beta": dense(&p.beta) }),
        Payload::Witness(w) => json!({ "varphi": dense(&w.varphi) }),
        Payload::Algebra(a) => {
            let d = a.space.dim();
            let b = a.bracket.matrix();
            let mut triples = Vec::new();
            for i in 0..d {
                for j in 0..d {
                    for k in 0..d {
                        let v = b.get(k, i * d + j);
                        if !v.is_zero() {
                            triples.push(json!([i, j, k, v.to_string()]));
                        }
                    }
                }
            }
            json!({ "basis": a.space.labels(), "bracket": triples, "r": dense(&a.r) })
        }
    };
    json!({
        "field": doc.field.to_string(),
        "format_version": FORMAT_VERSION,
        "kind": doc.payload.kind(),
        "lambda": doc.lambda.to_string(),
        "payload": payload,
    })
}

fn coalgebra_value(c: &RBLieCoalgebra) -> Value {
    json!({
        "basis": c.space().labels(),
        "delta": sparse(c.delta(), c.dim()),
        "r": dense(c.r()),
    })
}

pub fn dense(m: &LinearMap) -> Value {
    let mat = m.matrix();
    Value::Array(
        (0..mat.rows())
            .map(|i| Value::Array(mat.row(i).iter().map(|x| Value::String(x.to_string())).collect()))
            .collect(),
    )
}

/// Triples of a map into `V ⊗ W` with `dim W = second`.
pub fn sparse(m: &LinearMap, second: usize) -> Value {
    let mat = m.matrix();
    let mut out = Vec::new();
    for row in 0..mat.rows() {
        for k in 0..mat.cols() {
            let v = mat.get(row, k);
            if !v.is_zero() {
                out.push(json!([row / second, row % second, k, v.to_string()]));
            }
        }
    }
    Value::Array(out)
}

/// Parses a document. Without `raw`, each structure must pass its checkers.
pub fn parse(text: &str, raw: bool) -> Result<Document> {
    let v: Value = serde_json::from_str(text)?;
    let o = object(&v, "document")?;
    let version = string(get(o, "format_version")?, "format_version")?;
    if version != FORMAT_VERSION {
        return Err(FormatError::Invalid(format!("unsupported format_version {version:?}")));
    }
    let field: FieldSpec = string(get(o, "field")?, "field")?.parse()?;
    let lambda = scalar(field, get(o, "lambda")?)?;
    let kind = string(get(o, "kind")?, "kind")?;
    let p = object(get(o, "payload")?, "payload")?;
    let cx = Context { field, lambda: lambda.clone(), raw };
    let payload = match kind {
        "coalgebra" => Payload::Coalgebra(cx.coalgebra(p)?),
        "comodule" => {
            let base = cx.coalgebra(object(get(p, "coalgebra")?, "coalgebra")?)?;
            let space = labels(get(p, "basis")?)?;
            let sig = Signature::new(vec![space.clone(), base.space().clone()]);
            let rho = cx.sparse(get(p, "rho")?, (&space).into(), sig, base.dim(), "rho")?;
            let r_m = cx.dense(get(p, "r_m")?, &space, &space, "r_m")?;
            Payload::Comodule(if raw {
                RBComodule::raw(base, space, rho, r_m)?
            } else {
                RBComodule::new(base, space, rho, r_m)?
            })
        }
        "cocycle" => {
            let c = cx.coalgebra(object(get(p, "c")?, "c")?)?;
            let m = cx.coalgebra(object(get(p, "m")?, "m")?)?;
            let (cs, ms) = (c.space().clone(), m.space().clone());
            let h = cx.sparse(get(p, "h")?, (&ms).into(), Signature::power(&cs, 2), cs.dim(), "h")?;
            let rho = cx.sparse(get(p, "rho")?, (&ms).into(), Signature::new(vec![ms.clone(), cs.clone()]), cs.dim(), "rho")?;
            let phi = cx.dense(get(p, "phi")?, &ms, &cs, "phi")?;
            Payload::Cocycle(if raw {
                NonAbelianCocycle::raw(c, m, h, rho, phi)?
            } else {
                NonAbelianCocycle::new(c, m, h, rho, phi)?
            })
        }
        "extension" => {
            let c = cx.coalgebra(object(get(p, "c")?, "c")?)?;
            let m = cx.coalgebra(object(get(p, "m")?, "m")?)?;
            let e = cx.coalgebra(object(get(p, "e")?, "e")?)?;
            let f = cx.dense(get(p, "f")?, c.space(), e.space(), "f")?;
            let g = cx.dense(get(p, "g")?, e.space(), m.space(), "g")?;
            let t = p.get("t").map(|v| cx.dense(v, e.space(), c.space(), "t")).transpose()?;
            let s = p.get("s").map(|v| cx.dense(v, m.space(), e.space(), "s")).transpose()?;
            let parts = ExtensionParts { c, m, e, f, g, t, s };
            if !raw {
                parts.build()?;
            }
            Payload::Extension(parts)
        }
        "autpair" => Payload::AutPair(AutPair {
            alpha: cx.square(get(p, "alpha")?, "alpha")?,
            beta: cx.square(get(p, "beta")?, "beta")?,
        }),
        "witness" => Payload::Witness(EquivalenceWitness { varphi: cx.free(get(p, "varphi")?, "varphi")? }),
        other => return Err(FormatError::Invalid(format!("unknown kind {other:?}"))),
    };
    Ok(Document { field, lambda, payload })
}

struct Context {
    field: FieldSpec,
    lambda: Scalar,
    raw: bool,
}

impl Context {
    fn coalgebra(&self, o: &Map<String, Value>) -> Result<RBLieCoalgebra> {
        let space = labels(get(o, "basis")?)?;
        let delta = self.sparse(get(o, "delta")?, (&space).into(), Signature::power(&space, 2), space.dim(), "delta")?;
        let r = self.dense(get(o, "r")?, &space, &space, "r")?;
        Ok(if self.raw {
            RBLieCoalgebra::raw(space, delta, r, self.lambda.clone())?
        } else {
            RBLieCoalgebra::new(space, delta, r, self.lambda.clone())?
        })
    }

    fn sparse(&self, v: &Value, domain: Signature, codomain: Signature, second: usize, what: &str) -> Result<LinearMap> {
        let (rows, cols) = (codomain.dim(), domain.dim());
        let first = rows.checked_div(second).unwrap_or(0);
        let mut m = Matrix::zeros(self.field, rows, cols);
        let mut seen = std::collections::HashSet::new();
        for entry in array(v, what)? {
            let e = array(entry, what)?;
            let bad = || FormatError::Invalid(format!("{what}: bad entry {entry}"));
            if e.len() != 4 {
                return Err(bad());
            }
            let idx: Vec<usize> = e[..3]
                .iter()
                .map(|x| x.as_u64().map(|n| n as usize).ok_or_else(bad))
                .collect::<Result<_>>()?;
            let (i, j, k) = (idx[0], idx[1], idx[2]);
            if i >= first || j >= second || k >= cols {
                return Err(FormatError::Invalid(format!("{what}: index out of range in {entry}")));
            }
            if !seen.insert((i, j, k)) {
                return Err(FormatError::Invalid(format!("{what}: repeated entry for ({i}, {j}, {k})")));
            }
            m.set(i * second + j, k, scalar(self.field, &e[3])?);
        }
        Ok(LinearMap::new(domain, codomain, m)?)
    }

    fn matrix(&self, v: &Value, what: &str) -> Result<Matrix> {
        let rows = array(v, what)?;
        let data: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|r| array(r, what)?.iter().map(|x| scalar(self.field, x)).collect())
            .collect::<Result<_>>()?;
        let cols = data.first().map_or(0, Vec::len);
        if data.iter().any(|r| r.len() != cols) {
            return Err(FormatError::Invalid(format!("{what}: ragged rows")));
        }
        Ok(Matrix::from_rows(self.field, cols, data)?)
    }

    fn dense(&self, v: &Value, domain: &Space, codomain: &Space, what: &str) -> Result<LinearMap> {
        let m = self.matrix(v, what)?;
        if m.rows() != codomain.dim() || m.cols() != domain.dim() {
            return Err(FormatError::Invalid(format!(
                "{what}: expected {}x{}, got {}x{}",
                codomain.dim(),
                domain.dim(),
                m.rows(),
                m.cols()
            )));
        }
        Ok(LinearMap::new(domain.into(), codomain.into(), m)?)
    }

    fn free(&self, v: &Value, what: &str) -> Result<LinearMap> {
        let m = self.matrix(v, what)?;
        if m.rows() == 0 || m.cols() == 0 {
            return Err(FormatError::Invalid(format!("{what}: empty matrix")));
        }
        let (dom, cod) = (Space::standard("u", m.cols()), Space::standard("v", m.rows()));
        Ok(LinearMap::new((&dom).into(), (&cod).into(), m)?)
    }

    fn square(&self, v: &Value, what: &str) -> Result<LinearMap> {
        let m = self.free(v, what)?;
        if m.matrix().rows() != m.matrix().cols() {
            return Err(FormatError::Invalid(format!("{what}: not square")));
        }
        let s = Space::standard("u", m.matrix().rows());
        Ok(m.with_signatures((&s).into(), (&s).into())?)
    }
}

fn get<'a>(o: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    o.get(key).ok_or_else(|| FormatError::Missing(key.into()))
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| FormatError::Invalid(format!("{what}: expected an object")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| FormatError::Invalid(format!("{what}: expected an array")))
}

fn string<'a>(v: &'a Value, what: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| FormatError::Invalid(format!("{what}: expected a string")))
}

/// Scalars are strings; plain JSON integers are accepted on input.
fn scalar(field: FieldSpec, v: &Value) -> Result<Scalar> {
    match v {
        Value::String(s) => Ok(field.parse_scalar(s)?),
        Value::Number(n) if n.is_i64() => Ok(field.parse_scalar(&n.to_string())?),
        _ => Err(FormatError::Invalid(format!("expected a scalar, got {v}"))),
    }
}

fn labels(v: &Value) -> Result<Space> {
    let names = array(v, "basis")?
        .iter()
        .map(|x| string(x, "basis").map(str::to_string))
        .collect::<Result<Vec<_>>>()?;
    if names.is_empty() {
        return Err(FormatError::Invalid("basis: empty".into()));
    }
    Ok(Space::new(names)?)
}
