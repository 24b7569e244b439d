//! One function per subcommand. Each returns an [`Outcome`]; printing and
//! file output happen in `main`.

use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rbcoalg_core::coalgebra::is_morphism;
use rbcoalg_core::cohomology::{CohomologyEngine, Complex};
use rbcoalg_core::extension::{
    classify_small, cocycle_from_extension, solve_equivalence, EquivalenceWitness, ExtensionSES, NonAbelianCocycle,
};
use rbcoalg_core::oracle::scramble;
use rbcoalg_core::wells::{
    decide_extensible, verify_extensibility_witness, wells_map, wells_sequence_check, AutPair, SequenceChecks,
    EXTENSIBILITY_EQUATIONS,
};
use rbcoalg_core::{Error, Exec, FieldSpec, LinearMap, RBComodule, RBLieCoalgebra, Scalar, Space};
use serde_json::{json, Map, Value};
use thiserror::Error as ThisError;

use crate::format::{self, dense, sparse, Document, ExtensionParts, FormatError, Payload, FORMAT_VERSION};
use crate::{Cli, Command, GlobalArgs};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_GUARD: i32 = 3;
pub const EXIT_UNDECIDED: i32 = 4;

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Format { path: String, source: FormatError },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Engine(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Usage(_) => EXIT_PARSE,
            CliError::Format { source: FormatError::Engine(e), .. } | CliError::Engine(e) => engine_code(e),
            CliError::Format { .. } => EXIT_PARSE,
        }
    }

    /// Short machine-readable tag.
    pub fn reason(&self) -> &'static str {
        match self.exit_code() {
            EXIT_PARSE => "parse-error",
            EXIT_GUARD => "characteristic-guard",
            EXIT_UNDECIDED => "search-budget-exceeded",
            _ => "check-failed",
        }
    }

    pub fn to_value(&self) -> Value {
        let mut o = Map::new();
        o.insert("format_version".into(), json!(FORMAT_VERSION));
        o.insert("status".into(), json!(self.reason()));
        o.insert("message".into(), json!(self.to_string()));
        o.insert("exit_code".into(), json!(self.exit_code()));
        if let CliError::Engine(Error::SearchBudgetExceeded { needed, budget }) = self {
            o.insert("needed".into(), json!(needed.to_string()));
            o.insert("budget".into(), json!(budget));
        }
        Value::Object(o)
    }
}

fn engine_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::ShapeMismatch(_) | Error::FieldMismatch(..) | Error::InvalidPrime(_) | Error::OutOfRange { .. } => {
            EXIT_PARSE
        }
        Error::CharacteristicGuard { .. } | Error::NonInvertibleFactorial { .. } => EXIT_GUARD,
        Error::SearchBudgetExceeded { .. } => EXIT_UNDECIDED,
        _ => EXIT_FAIL,
    }
}

type Result<T> = std::result::Result<T, CliError>;

/// What a command produced.
#[derive(Debug)]
pub enum Output {
    /// A structure document; goes to `--output` or stdout.
    Document(Document),
    /// A report on stdout, with an optional document for `--output`.
    Report { command: &'static str, result: Value, attachment: Option<Document> },
}

#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub field: FieldSpec,
    pub lambda: Scalar,
    pub output: Output,
}

impl Outcome {
    fn report(code: i32, cx: (FieldSpec, Scalar), command: &'static str, result: Value) -> Self {
        Outcome { code, field: cx.0, lambda: cx.1, output: Output::Report { command, result, attachment: None } }
    }

    fn with_attachment(mut self, doc: Option<Document>) -> Self {
        if let Output::Report { attachment, .. } = &mut self.output {
            *attachment = doc;
        }
        self
    }

    /// The full JSON report envelope.
    pub fn report_value(&self) -> Option<Value> {
        let Output::Report { command, result, .. } = &self.output else { return None };
        Some(json!({
            "command": command,
            "field": self.field.to_string(),
            "format_version": FORMAT_VERSION,
            "kind": "report",
            "lambda": self.lambda.to_string(),
            "result": result,
            "status": if self.code == EXIT_PASS { "pass" } else { "fail" },
        }))
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let g = &cli.global;
    match &cli.command {
        Command::Verify { file } => verify(&load(file, g, true)?),
        Command::Cohomology { file, comodule, n, complex } => cohomology(g, file, comodule.as_deref(), *n, (*complex).into()),
        Command::Dualize { file } => {
            let c = coalgebra(&load(file, g, g.raw)?)?;
            Ok(document(Payload::Algebra(c.dualize())))
        }
        Command::Extend { cocycle } => extend(g, &load(cocycle, g, g.raw)?),
        Command::CocycleOf { extension } => {
            let x = extension_of(&load(extension, g, g.raw)?)?.with_splitting()?;
            Ok(document(Payload::Cocycle(cocycle_from_extension(&x)?)))
        }
        Command::Equivalent { first, second } => {
            let z1 = cocycle(&load(first, g, g.raw)?)?;
            let z2 = cocycle(&load(second, g, g.raw)?)?;
            equivalent(&z1, &z2)
        }
        Command::Extensible { extension, pair } => {
            let x = extension_of(&load(extension, g, g.raw)?)?.with_splitting()?;
            let p = pair_for(&x, &load(pair, g, g.raw)?)?;
            extensible(&x, &p)
        }
        Command::Wells { extension, pair } => {
            let x = extension_of(&load(extension, g, g.raw)?)?.with_splitting()?;
            let p = pair_for(&x, &load(pair, g, g.raw)?)?;
            wells(&x, &p)
        }
        Command::Classify { c, m, dim_c, dim_m } => classify(g, c.as_deref(), m.as_deref(), *dim_c, *dim_m),
        Command::WellsSequence { extension } => {
            let x = extension_of(&load(extension, g, g.raw)?)?;
            if x.field().order().is_none() {
                return Err(CliError::Usage("the Wells sequence check needs a prime field".into()));
            }
            let r = wells_sequence_check(&x, g.budget, Exec::default())?;
            let result = json!({
                "aut_c_e": r.aut_c_e,
                "z1_nab": r.z1_nab,
                "general": sequence_value(&r.general),
                "abelian": r.abelian.as_ref().map(sequence_value),
                "compatible_closed": r.compatible_closed,
                "exact": r.exact(),
            });
            Ok(Outcome::report(verdict(r.exact()), context(&x.c), "wells-sequence", result))
        }
    }
}

fn verdict(ok: bool) -> i32 {
    if ok {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

fn context(c: &RBLieCoalgebra) -> (FieldSpec, Scalar) {
    (c.field(), c.lambda().clone())
}

fn document(payload: Payload) -> Outcome {
    let doc = Document::new(payload);
    Outcome { code: EXIT_PASS, field: doc.field, lambda: doc.lambda.clone(), output: Output::Document(doc) }
}

/// Reads and parses a document, checking it against `--field` / `--lambda`.
pub fn load(path: &Path, g: &GlobalArgs, raw: bool) -> Result<Document> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: shown.clone(), source })?;
    let doc = format::parse(&text, raw).map_err(|source| CliError::Format { path: shown.clone(), source })?;
    if let Some(f) = expected_field(g)? {
        if f != doc.field {
            return Err(CliError::Usage(format!("{shown}: field is {}, expected {f}", doc.field)));
        }
        if let Some(l) = &g.lambda {
            let l = f.parse_scalar(l)?;
            if l != doc.lambda {
                return Err(CliError::Usage(format!("{shown}: λ is {}, expected {l}", doc.lambda)));
            }
        }
    }
    Ok(doc)
}

fn expected_field(g: &GlobalArgs) -> Result<Option<FieldSpec>> {
    g.field.as_deref().map(|s| s.parse::<FieldSpec>().map_err(CliError::from)).transpose()
}

fn wrong_kind(doc: &Document, want: &str) -> CliError {
    CliError::Usage(format!("expected a {want} document, got {}", doc.payload.kind()))
}

fn coalgebra(doc: &Document) -> Result<RBLieCoalgebra> {
    match &doc.payload {
        Payload::Coalgebra(c) => Ok(c.clone()),
        _ => Err(wrong_kind(doc, "coalgebra")),
    }
}

fn cocycle(doc: &Document) -> Result<NonAbelianCocycle> {
    match &doc.payload {
        Payload::Cocycle(z) => Ok(z.clone()),
        _ => Err(wrong_kind(doc, "cocycle")),
    }
}

fn extension_of(doc: &Document) -> Result<ExtensionSES> {
    match &doc.payload {
        Payload::Extension(parts) => Ok(parts.build()?),
        _ => Err(wrong_kind(doc, "extension")),
    }
}

/// An `autpair` document re-typed onto the spaces of `x`.
fn pair_for(x: &ExtensionSES, doc: &Document) -> Result<AutPair> {
    let Payload::AutPair(p) = &doc.payload else { return Err(wrong_kind(doc, "autpair")) };
    let on = |m: &LinearMap, s: &Space| m.with_signatures(s.into(), s.into());
    let p = AutPair { alpha: on(&p.alpha, x.c.space())?, beta: on(&p.beta, x.m.space())? };
    if !p.is_valid(&x.c, &x.m)? {
        return Err(Error::AxiomViolation("(α, β) is not a pair of automorphisms".into()).into());
    }
    Ok(p)
}

fn verify(doc: &Document) -> Result<Outcome> {
    let mut checks: Vec<(&str, String, bool)> = Vec::new();
    let coalg = |who: &'static str, c: &RBLieCoalgebra, checks: &mut Vec<(&str, String, bool)>| {
        for (n, ok) in c.check().entries() {
            checks.push((who, n.to_string(), ok));
        }
    };
    match &doc.payload {
        Payload::Coalgebra(c) => coalg("C", c, &mut checks),
        Payload::Comodule(m) => {
            coalg("C", m.base(), &mut checks);
            for (n, ok) in m.check().entries() {
                checks.push(("M", n.to_string(), ok));
            }
        }
        Payload::Cocycle(z) => {
            coalg("C", z.c(), &mut checks);
            coalg("M", z.m(), &mut checks);
            for (n, ok) in z.check().entries() {
                checks.push(("(h, rho, phi)", n.to_string(), ok));
            }
        }
        Payload::Extension(x) => {
            coalg("C", &x.c, &mut checks);
            coalg("M", &x.m, &mut checks);
            coalg("E", &x.e, &mut checks);
            let f_ok = is_morphism(&x.c, &x.e, &x.f).unwrap_or(false);
            let g_ok = is_morphism(&x.e, &x.m, &x.g).unwrap_or(false);
            let exact = x.f.rank() == x.c.dim()
                && x.g.rank() == x.m.dim()
                && x.e.dim() == x.c.dim() + x.m.dim()
                && (&x.g * &x.f).is_zero();
            checks.push(("f", "morphism".into(), f_ok));
            checks.push(("g", "morphism".into(), g_ok));
            checks.push(("C -> E -> M", "exact".into(), exact));
            if x.t.is_some() && f_ok && g_ok && exact {
                checks.push(("t, s", "splitting".into(), x.build().is_ok()));
            }
        }
        Payload::AutPair(p) => {
            checks.push(("alpha", "invertible".into(), p.alpha.is_invertible()));
            checks.push(("beta", "invertible".into(), p.beta.is_invertible()));
        }
        Payload::Witness(_) | Payload::Algebra(_) => {}
    }
    let passed = checks.iter().all(|c| c.2);
    let list: Vec<Value> = checks
        .iter()
        .map(|(s, e, ok)| json!({ "structure": s, "equation": e, "holds": ok }))
        .collect();
    let failing: Vec<&str> = checks.iter().filter(|c| !c.2).map(|c| c.1.as_str()).collect();
    let result = json!({ "kind": doc.payload.kind(), "checks": list, "failing": failing, "passed": passed });
    Ok(Outcome::report(verdict(passed), (doc.field, doc.lambda.clone()), "verify", result))
}

fn cohomology(g: &GlobalArgs, file: &Path, comodule: Option<&Path>, n: usize, complex: Complex) -> Result<Outcome> {
    let first = load(file, g, g.raw)?;
    let com = match (&first.payload, comodule) {
        (Payload::Coalgebra(c), None) => RBComodule::adjoint(c),
        (Payload::Comodule(m), None) => m.clone(),
        (Payload::Coalgebra(c), Some(path)) => {
            let doc = load(path, g, g.raw)?;
            let Payload::Comodule(m) = &doc.payload else { return Err(wrong_kind(&doc, "comodule")) };
            if m.base() != c {
                return Err(CliError::Usage("the comodule is over a different coalgebra".into()));
            }
            m.clone()
        }
        _ => return Err(wrong_kind(&first, "coalgebra or comodule")),
    };
    let r = CohomologyEngine::new(&com).cohomology(complex, n)?;
    let result = json!({
        "n": r.n,
        "complex": r.complex.name(),
        "dim_cochains": r.dim_cochains,
        "dim_z": r.dim_z,
        "dim_b": r.dim_b,
        "dim_h": r.dim_h,
    });
    Ok(Outcome::report(EXIT_PASS, context(com.base()), "cohomology", result))
}

fn extend(g: &GlobalArgs, doc: &Document) -> Result<Outcome> {
    let z = cocycle(doc)?;
    let x = ExtensionSES::from_cocycle(&z)?;
    let x = match g.seed {
        Some(seed) => scramble(&x, &random_basis_change(&x, seed))?,
        None => x,
    };
    Ok(document(Payload::Extension(ExtensionParts::from_extension(&x))))
}

/// A seeded invertible matrix with entries in `-2..=2`.
fn random_basis_change(x: &ExtensionSES, seed: u64) -> LinearMap {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = x.field();
    let d = x.e.dim();
    loop {
        let v: Vec<Scalar> = (0..d * d).map(|_| f.from_i64(rng.gen_range(-2..=2))).collect();
        let p = LinearMap::from_vec(x.e.space().into(), x.e.space().into(), f, &v);
        if p.is_invertible() {
            return p;
        }
    }
}

fn equivalent(z1: &NonAbelianCocycle, z2: &NonAbelianCocycle) -> Result<Outcome> {
    let w = solve_equivalence(z1, z2)?;
    let result = json!({
        "equivalent": w.is_some(),
        "witness": w.as_ref().map(|w| dense(&w.varphi)),
    });
    let attachment = w.map(|w| Document::new(Payload::Witness(w)).with_lambda(z1.c().lambda()));
    Ok(Outcome::report(verdict(attachment.is_some()), context(z1.c()), "equivalent", result).with_attachment(attachment))
}

fn extensible(x: &ExtensionSES, p: &AutPair) -> Result<Outcome> {
    let v = decide_extensible(x, p)?;
    let equations = match &v.witness {
        Some(w) => {
            let holds = verify_extensibility_witness(x, p, w)?;
            EXTENSIBILITY_EQUATIONS.iter().zip(holds).map(|(n, ok)| json!({ "equation": n, "holds": ok })).collect()
        }
        None => Vec::new(),
    };
    let result = json!({
        "extensible": v.extensible,
        "witness": v.witness.as_ref().map(dense),
        "gamma": v.gamma.as_ref().map(dense),
        "equations": equations,
    });
    let attachment = v
        .witness
        .map(|w| Document::new(Payload::Witness(EquivalenceWitness { varphi: w })).with_lambda(x.c.lambda()));
    Ok(Outcome::report(verdict(v.extensible), context(&x.c), "extensible", result).with_attachment(attachment))
}

fn wells(x: &ExtensionSES, p: &AutPair) -> Result<Outcome> {
    let w = wells_map(x, p)?;
    let dc = x.c.dim();
    let [dh, drho, dphi] = &w.difference;
    let result = json!({
        "zero": w.is_zero(),
        "difference": { "h": sparse(dh, dc), "rho": sparse(drho, dc), "phi": dense(dphi) },
        "witness": w.witness.as_ref().map(|w| dense(&w.varphi)),
    });
    Ok(Outcome::report(verdict(w.is_zero()), context(&x.c), "wells", result))
}

fn classify(g: &GlobalArgs, c: Option<&Path>, m: Option<&Path>, dim_c: usize, dim_m: usize) -> Result<Outcome> {
    let (c, m) = match (c, m) {
        (Some(c), Some(m)) => (coalgebra(&load(c, g, g.raw)?)?, coalgebra(&load(m, g, g.raw)?)?),
        (None, None) => {
            let f = expected_field(g)?.ok_or_else(|| CliError::Usage("classify needs --field or input files".into()))?;
            let lambda = match &g.lambda {
                Some(l) => f.parse_scalar(l)?,
                None => f.zero(),
            };
            (
                RBLieCoalgebra::zero(Space::standard("c", dim_c), lambda.clone()),
                RBLieCoalgebra::zero(Space::standard("m", dim_m), lambda),
            )
        }
        _ => return Err(CliError::Usage("give both C and M, or neither".into())),
    };
    if c.field().order().is_none() {
        return Err(CliError::Usage("classification needs a prime field".into()));
    }
    let r = classify_small(&c, &m, g.budget, Exec::default())?;
    let dc = c.dim();
    let reps: Vec<Value> = r
        .representatives
        .iter()
        .map(|z| json!({ "h": sparse(z.h(), dc), "rho": sparse(z.rho(), dc), "phi": dense(z.phi()) }))
        .collect();
    let result = json!({
        "candidates": r.candidates,
        "cocycles": r.cocycles,
        "classes": r.classes(),
        "class_sizes": r.class_sizes,
        "representatives": reps,
    });
    Ok(Outcome::report(EXIT_PASS, context(&c), "classify", result))
}

fn sequence_value(s: &SequenceChecks) -> Value {
    json!({
        "pairs": s.pairs,
        "first_map_injective": s.first_map_injective,
        "kernel_k_is_image": s.kernel_k_is_image,
        "chi_round_trip": s.chi_round_trip,
        "chi_additive": s.chi_additive,
        "kernel_w_is_image_k": s.kernel_w_is_image_k,
        "extensible_iff_zero_class": s.extensible_iff_zero_class,
        "non_extensible_pairs": s.non_extensible_pairs,
        "exact": s.exact(),
    })
}

/// Plain-text rendering of a report for `--pretty`.
pub fn render_pretty(outcome: &Outcome) -> String {
    let Some(v) = outcome.report_value() else { return String::new() };
    let mut out = format!(
        "{} over {} (λ = {}): {}\n",
        v["command"].as_str().unwrap_or_default(),
        outcome.field,
        outcome.lambda,
        v["status"].as_str().unwrap_or_default()
    );
    let result = &v["result"];
    if let Some(checks) = result.get("checks").and_then(Value::as_array) {
        for c in checks {
            let ok = c["holds"].as_bool().unwrap_or(false);
            out.push_str(&format!(
                "  {:<14} {:<12} {}\n",
                c["structure"].as_str().unwrap_or_default(),
                c["equation"].as_str().unwrap_or_default(),
                if ok { "ok" } else { "FAILS" }
            ));
        }
        return out;
    }
    if let Some(o) = result.as_object() {
        for (k, val) in o {
            out.push_str(&format!("  {k}: {val}\n"));
        }
    }
    out
}
