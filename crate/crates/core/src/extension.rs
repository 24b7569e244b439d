//! Non-abelian 2-cocycles, semidirect coalgebras and extensions.
//!
//! Direct sums `C ⊕ M` always list the basis of `C` first, then `M`.

use crate::coalgebra::{is_morphism, weighted_sum, RBLieCoalgebra};
use crate::comodule::RBComodule;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::matrix::Matrix;
use crate::scalar::{FieldSpec, Scalar};
use crate::solve::{point_count, solve_affine_system, AffineSolution, Constraint, Unknown};
use crate::tensor::{flip, kron, LinearMap, Signature, Space};

pub const COCYCLE_EQUATIONS: [&str; 8] = ["(n0)", "(n1)", "(n2)", "(n3)", "(n4)", "(n5)", "(n6)", "(n7)"];

/// Per-equation verdicts for a candidate 2-cocycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CocycleReport(pub [bool; 8]);

impl CocycleReport {
    pub fn all(&self) -> bool {
        self.0.iter().all(|&b| b)
    }

    pub fn entries(&self) -> Vec<(&'static str, bool)> {
        COCYCLE_EQUATIONS.iter().copied().zip(self.0).collect()
    }

    pub fn failing(&self) -> Vec<&'static str> {
        self.entries().into_iter().filter(|(_, ok)| !ok).map(|(n, _)| n).collect()
    }
}

/// A triple `(h, ρ, φ)` with `h: M -> C ⊗ C`, `ρ: M -> M ⊗ C`, `φ: M -> C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonAbelianCocycle {
    c: RBLieCoalgebra,
    m: RBLieCoalgebra,
    h: LinearMap,
    rho: LinearMap,
    phi: LinearMap,
}

impl NonAbelianCocycle {
    /// Checked constructor.
    pub fn new(c: RBLieCoalgebra, m: RBLieCoalgebra, h: LinearMap, rho: LinearMap, phi: LinearMap) -> Result<Self> {
        let z = Self::raw(c, m, h, rho, phi)?;
        let report = z.check();
        if !report.all() {
            return Err(Error::CocycleInvalid(report.failing().join(", ")));
        }
        Ok(z)
    }

    /// Shape-checked, equation-unchecked constructor.
    pub fn raw(c: RBLieCoalgebra, m: RBLieCoalgebra, h: LinearMap, rho: LinearMap, phi: LinearMap) -> Result<Self> {
        c.compatible_with(&m)?;
        let (cs, ms) = (c.space().clone(), m.space().clone());
        let (dc, dm) = (cs.dim(), ms.dim());
        let f = c.field();
        for map in [&h, &rho, &phi] {
            if map.field() != f {
                return Err(Error::FieldMismatch(f, map.field()));
            }
        }
        let shape = |map: &LinearMap, rows: usize, name: &str| {
            if map.domain().dim() != dm || map.codomain().dim() != rows {
                Err(Error::ShapeMismatch(format!("{name} has the wrong shape")))
            } else {
                Ok(())
            }
        };
        shape(&h, dc * dc, "h")?;
        shape(&rho, dm * dc, "ρ")?;
        shape(&phi, dc, "φ")?;
        let h = h.with_signatures((&ms).into(), Signature::power(&cs, 2))?;
        let rho = rho.with_signatures((&ms).into(), Signature::new(vec![ms.clone(), cs.clone()]))?;
        let phi = phi.with_signatures((&ms).into(), (&cs).into())?;
        Ok(NonAbelianCocycle { c, m, h, rho, phi })
    }

    /// `(0, 0, 0)`.
    pub fn zero(c: RBLieCoalgebra, m: RBLieCoalgebra) -> Result<Self> {
        let f = c.field();
        let (cs, ms) = (c.space().clone(), m.space().clone());
        let h = LinearMap::zero(f, &ms, Signature::power(&cs, 2));
        let rho = LinearMap::zero(f, &ms, Signature::new(vec![ms.clone(), cs.clone()]));
        let phi = LinearMap::zero(f, &ms, &cs);
        Self::new(c, m, h, rho, phi)
    }

    pub fn c(&self) -> &RBLieCoalgebra {
        &self.c
    }

    pub fn m(&self) -> &RBLieCoalgebra {
        &self.m
    }

    pub fn h(&self) -> &LinearMap {
        &self.h
    }

    pub fn rho(&self) -> &LinearMap {
        &self.rho
    }

    pub fn phi(&self) -> &LinearMap {
        &self.phi
    }

    pub fn field(&self) -> FieldSpec {
        self.c.field()
    }

    /// Same triple data over the same pair of coalgebras, with new maps.
    pub fn with_maps(&self, h: LinearMap, rho: LinearMap, phi: LinearMap) -> Result<Self> {
        Self::new(self.c.clone(), self.m.clone(), h, rho, phi)
    }

    pub fn with_maps_raw(&self, h: LinearMap, rho: LinearMap, phi: LinearMap) -> Result<Self> {
        Self::raw(self.c.clone(), self.m.clone(), h, rho, phi)
    }

    pub fn same_base(&self, other: &NonAbelianCocycle) -> Result<()> {
        if self.c != other.c || self.m != other.m {
            return Err(Error::StructureMismatch("cocycles live on different coalgebras".into()));
        }
        Ok(())
    }

    /// `τρ: M -> C ⊗ M`.
    fn tau_rho(&self) -> LinearMap {
        &flip(self.field(), self.m.space(), self.c.space()) * &self.rho
    }

    pub fn check(&self) -> CocycleReport {
        CocycleReport(self.defects().map(|d| d.is_zero()))
    }

    /// The eight expressions whose vanishing defines a cocycle.
    pub fn defects(&self) -> [LinearMap; 8] {
        let f = self.field();
        let (cs, ms) = (self.c.space(), self.m.space());
        let ic = LinearMap::identity(f, cs);
        let im = LinearMap::identity(f, ms);
        let tau_cc = self.c.tau();
        let (dc, dm) = (self.c.delta(), self.m.delta());
        let (rc, rm) = (self.c.r(), self.m.r());
        let lambda = self.c.lambda();
        let (h, rho, phi) = (&self.h, &self.rho, &self.phi);
        let trho = self.tau_rho();
        let twist_c = kron(&ic, &tau_cc);

        let n0 = &(&tau_cc * h) + h;

        let dh_left = &kron(dc, &ic) * h;
        let lhs1 = &(&(&kron(&ic, dc) * h) - &dh_left) + &(&twist_c * &dh_left);
        let h_rho = &kron(h, &ic) * rho;
        let rhs1 = &(&h_rho + &(&kron(&ic, h) * &trho)) - &(&twist_c * &h_rho);
        let n1 = &lhs1 - &rhs1;

        let rho_rho = &kron(rho, &ic) * rho;
        let lhs2 = &(&kron(&im, dc) * rho) + &(&kron(&im, h) * dm);
        let rhs2 = &rho_rho - &(&kron(&im, &tau_cc) * &rho_rho);
        let n2 = &lhs2 - &rhs2;

        let flip_mc = flip(f, ms, cs);
        let n3 = &(&(&(&kron(&ic, &trho) * &trho) - &(&kron(h, &im) * dm)) + &(&kron(dc, &im) * &trho))
            - &(&(&kron(&ic, &flip_mc) * &kron(&trho, &ic)) * rho);

        let trho_dm = &kron(&trho, &im) * dm;
        let n4 = &(&trho_dm - &(&kron(&ic, dm) * &trho)) - &(&kron(&ic, &flip(f, ms, ms)) * &trho_dm);

        let n5 = &(&(&kron(dm, &ic) * rho) - &(&(&kron(&im, &flip(f, cs, ms)) * &kron(rho, &im)) * dm))
            - &(&kron(&im, rho) * dm);

        let wc = weighted_sum(rc, rc, lambda);
        let lhs6 = &(&(&(&(&(&kron(phi, rc) * rho) - &(&kron(rc, phi) * &trho)) - &(&(&kron(phi, &ic) * rho) * rm))
            + &(&(&kron(&ic, phi) * &trho) * rm))
            + &(&kron(phi, phi) * dm))
            - &(&(&wc * dc) * phi);
        let rhs6 = &(&(&wc * h) * rm) - &(&kron(rc, rc) * h);
        let n6 = &lhs6 - &rhs6;

        let wmc = weighted_sum(rm, rc, lambda);
        let lhs7 = &(&kron(rm, phi) * dm) + &(&kron(rm, rc) * rho);
        let rhs7 = &(&(&kron(&im, phi) * dm) * rm) + &(&(&wmc * rho) * rm);
        let n7 = &lhs7 - &rhs7;

        [n0, n1, n2, n3, n4, n5, n6, n7]
    }
}

/// Inclusions and projections of `C ⊕ M`.
pub struct DirectSum {
    pub space: Space,
    pub inc_c: LinearMap,
    pub inc_m: LinearMap,
    pub proj_c: LinearMap,
    pub proj_m: LinearMap,
}

impl DirectSum {
    pub fn new(field: FieldSpec, c: &Space, m: &Space) -> Self {
        let space = c.direct_sum(m);
        let (dc, dm) = (c.dim(), m.dim());
        let e = dc + dm;
        let inc = |off: usize, d: usize| Matrix::from_fn(field, e, d, |i, j| {
            if i == off + j { field.one() } else { field.zero() }
        });
        let inc_c = LinearMap::new(c.into(), (&space).into(), inc(0, dc)).expect("shape");
        let inc_m = LinearMap::new(m.into(), (&space).into(), inc(dc, dm)).expect("shape");
        let proj_c = inc_c.transpose();
        let proj_m = inc_m.transpose();
        DirectSum { space, inc_c, inc_m, proj_c, proj_m }
    }
}

/// Semidirect structure maps on `C ⊕ M` without checking the result.
pub fn semidirect_raw(z: &NonAbelianCocycle) -> Result<RBLieCoalgebra> {
    let f = z.field();
    let ds = DirectSum::new(f, z.c.space(), z.m.space());
    let (ic, im) = (&ds.inc_c, &ds.inc_m);
    let on_c = &(&kron(ic, ic) * z.c.delta()) * &ds.proj_c;
    let on_m = &(&(&(&kron(ic, ic) * &z.h) + &(&kron(im, im) * z.m.delta())) + &(&kron(im, ic) * &z.rho))
        - &(&kron(ic, im) * &z.tau_rho());
    let delta = &on_c + &(&on_m * &ds.proj_m);
    let r = &(&(&(ic * z.c.r()) * &ds.proj_c) + &(&(im * z.m.r()) * &ds.proj_m)) + &(&(ic * &z.phi) * &ds.proj_m);
    RBLieCoalgebra::raw(ds.space, delta, r, z.c.lambda().clone())
}

/// The coalgebra `C ⊕_{(h,ρ,φ)} M`.
pub fn semidirect(z: &NonAbelianCocycle) -> Result<RBLieCoalgebra> {
    let report = z.check();
    if !report.all() {
        return Err(Error::CocycleInvalid(report.failing().join(", ")));
    }
    let e = semidirect_raw(z)?;
    if !e.check().all() {
        return Err(Error::InternalInconsistency("semidirect coalgebra of a cocycle failed its axioms".into()));
    }
    Ok(e)
}

/// `0 -> C --f--> E --g--> M -> 0`, optionally with a retraction and section.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionSES {
    pub c: RBLieCoalgebra,
    pub m: RBLieCoalgebra,
    pub e: RBLieCoalgebra,
    pub f: LinearMap,
    pub g: LinearMap,
    pub t: Option<LinearMap>,
    pub s: Option<LinearMap>,
}

impl ExtensionSES {
    /// Checks that `f`, `g` are morphisms and the sequence is exact.
    pub fn new(c: RBLieCoalgebra, m: RBLieCoalgebra, e: RBLieCoalgebra, f: LinearMap, g: LinearMap) -> Result<Self> {
        c.compatible_with(&m)?;
        c.compatible_with(&e)?;
        if !is_morphism(&c, &e, &f)? {
            return Err(Error::AxiomViolation("f is not a morphism".into()));
        }
        if !is_morphism(&e, &m, &g)? {
            return Err(Error::AxiomViolation("g is not a morphism".into()));
        }
        let (dc, dm, de) = (c.dim(), m.dim(), e.dim());
        if f.rank() != dc || g.rank() != dm || de != dc + dm || !(&g * &f).is_zero() {
            return Err(Error::AxiomViolation("sequence is not exact".into()));
        }
        let f = f.with_signatures(c.space().into(), e.space().into())?;
        let g = g.with_signatures(e.space().into(), m.space().into())?;
        Ok(ExtensionSES { c, m, e, f, g, t: None, s: None })
    }

    /// The semidirect extension of a cocycle with the canonical splitting.
    pub fn from_cocycle(z: &NonAbelianCocycle) -> Result<Self> {
        let e = semidirect(z)?;
        let ds = DirectSum::new(z.field(), z.c.space(), z.m.space());
        let mut x = Self::new(z.c.clone(), z.m.clone(), e, ds.inc_c, ds.proj_m)?;
        x.t = Some(ds.proj_c);
        x.s = Some(ds.inc_m);
        Ok(x)
    }

    pub fn field(&self) -> FieldSpec {
        self.c.field()
    }

    /// Replaces the retraction; the section is rebuilt to satisfy
    /// `ft + sg = I`.
    pub fn with_retraction(&self, t: LinearMap) -> Result<Self> {
        let f = self.field();
        if &t * &self.f != LinearMap::identity(f, self.c.space()) {
            return Err(Error::MembershipViolation("t f ≠ I_C".into()));
        }
        let (_, s0) = find_retraction(self)?;
        let ie = LinearMap::identity(f, self.e.space());
        let s = &(&ie - &(&self.f * &t)) * &s0;
        let mut x = self.clone();
        x.t = Some(t.with_signatures(self.e.space().into(), self.c.space().into())?);
        x.s = Some(s);
        Ok(x)
    }

    /// Retraction and section, computing them if absent.
    pub fn splitting(&self) -> Result<(LinearMap, LinearMap)> {
        match (&self.t, &self.s) {
            (Some(t), Some(s)) => Ok((t.clone(), s.clone())),
            (Some(t), None) => {
                let x = self.with_retraction(t.clone())?;
                Ok((x.t.unwrap(), x.s.unwrap()))
            }
            _ => find_retraction(self),
        }
    }

    pub fn with_splitting(&self) -> Result<Self> {
        let (t, s) = self.splitting()?;
        let mut x = self.clone();
        x.t = Some(t);
        x.s = Some(s);
        Ok(x)
    }
}

/// Deterministic `(t, s)` with `tf = I_C`, `gs = I_M`, `ft + sg = I_E`.
///
/// The image of `f` is completed to a basis of `E` by standard basis vectors,
/// taken in increasing order whenever they raise the rank.
pub fn find_retraction(x: &ExtensionSES) -> Result<(LinearMap, LinearMap)> {
    let field = x.field();
    let (dc, de) = (x.c.dim(), x.e.dim());
    let mut cols = x.f.matrix().columns();
    let mut chosen = Vec::new();
    for j in 0..de {
        let mut v = vec![field.zero(); de];
        v[j] = field.one();
        let mut trial = cols.clone();
        trial.push(v.clone());
        if Matrix::from_columns(field, de, &trial).rank() == trial.len() {
            cols = trial;
            chosen.push(v);
        }
    }
    let b = Matrix::from_columns(field, de, &cols);
    let binv = b.inverse().ok_or_else(|| Error::AxiomViolation("f is not injective".into()))?;
    let t = binv.block(0, dc, 0, de);
    let w = Matrix::from_columns(field, de, &chosen);
    let gw = x.g.matrix().try_mul(&w)?;
    let gw_inv = gw
        .inverse()
        .ok_or_else(|| Error::AxiomViolation("sequence is not exact".into()))?;
    let s = w.try_mul(&gw_inv)?;
    Ok((
        LinearMap::new(x.e.space().into(), x.c.space().into(), t)?,
        LinearMap::new(x.m.space().into(), x.e.space().into(), s)?,
    ))
}

/// `h = (t⊗t)Δ_E s − Δ_C t s`, `ρ = (g⊗t)Δ_E s`, `φ = t R_E s − R_C t s`.
pub fn cocycle_from_extension(x: &ExtensionSES) -> Result<NonAbelianCocycle> {
    let (t, s) = x.splitting()?;
    let de_s = x.e.delta() * &s;
    let ts = &t * &s;
    let h = &(&kron(&t, &t) * &de_s) - &(x.c.delta() * &ts);
    let rho = &kron(&x.g, &t) * &de_s;
    let phi = &(&(&t * x.e.r()) * &s) - &(x.c.r() * &ts);
    NonAbelianCocycle::new(x.c.clone(), x.m.clone(), h, rho, phi)
        .map_err(|e| Error::InternalInconsistency(format!("extracted triple is not a cocycle: {e}")))
}

/// The comodule `(M, ρ_t, R_M)` of an extension by an abelian `M`.
pub fn extract_comodule(x: &ExtensionSES) -> Result<RBComodule> {
    if !x.m.is_abelian() {
        return Err(Error::NonAbelianModule);
    }
    let z = cocycle_from_extension(x)?;
    RBComodule::new(x.c.clone(), x.m.space().clone(), z.rho.clone(), x.m.r().clone())
}

/// `φ: M -> C` witnessing an equivalence of two cocycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceWitness {
    pub varphi: LinearMap,
}

/// Checks `h' − h = (φ⊗I)ρ − τ(φ⊗I)ρ + (φ⊗φ)Δ_M − Δ_Cφ`,
/// `ρ' − ρ = (I⊗φ)Δ_M` and `φ' − φ = φR_M − R_Cφ`.
pub fn check_equivalence_witness(z1: &NonAbelianCocycle, z2: &NonAbelianCocycle, w: &EquivalenceWitness) -> Result<bool> {
    z1.same_base(z2)?;
    let v = &w.varphi;
    if v.domain().dim() != z1.m.dim() || v.codomain().dim() != z1.c.dim() {
        return Err(Error::ShapeMismatch("witness must map M to C".into()));
    }
    Ok(equivalence_defects(z1, z2, v).iter().all(LinearMap::is_zero))
}

fn equivalence_defects(z1: &NonAbelianCocycle, z2: &NonAbelianCocycle, v: &LinearMap) -> [LinearMap; 3] {
    let f = z1.field();
    let ic = LinearMap::identity(f, z1.c.space());
    let im = LinearMap::identity(f, z1.m.space());
    let vr = &kron(v, &ic) * &z1.rho;
    let rhs1 = &(&(&vr - &(&z1.c.tau() * &vr)) + &(&kron(v, v) * z1.m.delta())) - &(z1.c.delta() * v);
    let e1 = &(&z2.h - &z1.h) - &rhs1;
    let e2 = &(&z2.rho - &z1.rho) - &(&kron(&im, v) * z1.m.delta());
    let e3 = &(&(&z2.phi - &z1.phi) - &(v * z1.m.r())) + &(z1.c.r() * v);
    [e1, e2, e3]
}

/// The cocycle obtained from `z` by the equivalence `φ` (the unique `z'`
/// with `z ~ z'` via `φ`).
pub fn act(z: &NonAbelianCocycle, v: &LinearMap) -> Result<NonAbelianCocycle> {
    let f = z.field();
    let ic = LinearMap::identity(f, z.c.space());
    let im = LinearMap::identity(f, z.m.space());
    let vr = &kron(v, &ic) * &z.rho;
    let h = &z.h + &(&(&(&vr - &(&z.c.tau() * &vr)) + &(&kron(v, v) * z.m.delta())) - &(z.c.delta() * v));
    let rho = &z.rho + &(&kron(&im, v) * z.m.delta());
    let phi = &(&z.phi + &(v * z.m.r())) - &(z.c.r() * v);
    z.with_maps_raw(h, rho, phi)
}

/// All `φ` with `z1 ~ z2` via `φ`, as an affine space.
///
/// Given `ρ' − ρ = (I⊗φ)Δ_M`, the quadratic term equals
/// `(φ⊗φ)Δ_M = (φ⊗I)(ρ' − ρ)`, so the whole system is affine in `φ` for
/// abelian and non-abelian `M` alike.
pub fn equivalence_solutions(z1: &NonAbelianCocycle, z2: &NonAbelianCocycle) -> Result<Option<AffineSolution>> {
    z1.same_base(z2)?;
    let f = z1.field();
    let (cs, ms) = (z1.c.space().clone(), z1.m.space().clone());
    let ic = LinearMap::identity(f, &cs);
    let im = LinearMap::identity(f, &ms);
    let tau = z1.c.tau();
    let dh = &z2.h - &z1.h;
    let drho = &z2.rho - &z1.rho;
    let dphi = &z2.phi - &z1.phi;
    let unknown = Unknown::new(f, &ms, &cs);
    let constraints: Vec<Constraint> = vec![
        Box::new(|v: &LinearMap| {
            &(&(&(&kron(v, &ic) * &z2.rho) - &(&tau * &(&kron(v, &ic) * &z1.rho))) - &(z1.c.delta() * v)) - &dh
        }),
        Box::new(|v: &LinearMap| &(&kron(&im, v) * z1.m.delta()) - &drho),
        Box::new(|v: &LinearMap| &(&(v * z1.m.r()) - &(z1.c.r() * v)) - &dphi),
    ];
    solve_affine_system(&unknown, &constraints)
}

/// An equivalence witness, or `None` when the cocycles are not equivalent.
pub fn solve_equivalence(z1: &NonAbelianCocycle, z2: &NonAbelianCocycle) -> Result<Option<EquivalenceWitness>> {
    let Some(sol) = equivalence_solutions(z1, z2)? else {
        return Ok(None);
    };
    let w = EquivalenceWitness { varphi: sol.particular_map() };
    if !check_equivalence_witness(z1, z2, &w)? {
        return Err(Error::InternalInconsistency("solved witness fails the equivalence equations".into()));
    }
    Ok(Some(w))
}

/// `φ(m) = t₂(e) − t₁(e)` for any `e` with `g(e) = m`, relating the cocycles
/// extracted with the retractions of `x1` and `x2`.
pub fn retraction_witness(x1: &ExtensionSES, x2: &ExtensionSES) -> Result<EquivalenceWitness> {
    let (t1, s1) = x1.splitting()?;
    let (t2, _) = x2.splitting()?;
    Ok(EquivalenceWitness { varphi: &(&t2 * &s1) - &(&t1 * &s1) })
}

/// Is `θ: E₁ -> E₂` a bijective morphism with `θf₁ = f₂` and `g₂θ = g₁`?
pub fn check_extension_equivalence(x1: &ExtensionSES, x2: &ExtensionSES, theta: &LinearMap) -> Result<bool> {
    if x1.c != x2.c || x1.m != x2.m {
        return Err(Error::StructureMismatch("extensions of different coalgebras".into()));
    }
    if theta.domain().dim() != x1.e.dim() || theta.codomain().dim() != x2.e.dim() {
        return Err(Error::ShapeMismatch("θ must map E₁ to E₂".into()));
    }
    Ok(theta.is_invertible()
        && is_morphism(&x1.e, &x2.e, theta)?
        && theta * &x1.f == x2.f
        && &x2.g * theta == x1.g)
}

/// `θ(c + m) = c + φ(m) + m` between two semidirect coalgebras.
pub fn theta_from_witness(z1: &NonAbelianCocycle, w: &EquivalenceWitness) -> LinearMap {
    let f = z1.field();
    let ds = DirectSum::new(f, z1.c.space(), z1.m.space());
    let ie = LinearMap::identity(f, &ds.space);
    &ie + &(&(&ds.inc_c * &w.varphi) * &ds.proj_m)
}

/// `θ(e) = t(e) + g(e)` from an extension to the semidirect coalgebra of
/// its cocycle.
pub fn theta_to_semidirect(x: &ExtensionSES) -> Result<LinearMap> {
    let (t, _) = x.splitting()?;
    let ds = DirectSum::new(x.field(), x.c.space(), x.m.space());
    Ok(&(&ds.inc_c * &t) + &(&ds.inc_m * &x.g))
}

/// Number of free parameters of a raw triple `(h, ρ, φ)`.
pub fn triple_parameters(dc: usize, dm: usize) -> usize {
    dm * dc * dc + dm * dm * dc + dm * dc
}

/// Raw triple with the given flat parameter vector (h, then ρ, then φ, each
/// flattened row-major).
pub fn triple_from_params(c: &RBLieCoalgebra, m: &RBLieCoalgebra, params: &[Scalar]) -> Result<NonAbelianCocycle> {
    let f = c.field();
    let (cs, ms) = (c.space(), m.space());
    let (dc, dm) = (cs.dim(), ms.dim());
    let nh = dm * dc * dc;
    let nr = dm * dm * dc;
    let h = LinearMap::from_vec(ms.into(), Signature::power(cs, 2), f, &params[..nh]);
    let rho = LinearMap::from_vec(ms.into(), Signature::new(vec![ms.clone(), cs.clone()]), f, &params[nh..nh + nr]);
    let phi = LinearMap::from_vec(ms.into(), cs.into(), f, &params[nh + nr..]);
    NonAbelianCocycle::raw(c.clone(), m.clone(), h, rho, phi)
}

/// Vector over `GF(p)` at position `index` of the lexicographic enumeration
/// (first coordinate most significant).
pub fn vector_at(field: FieldSpec, len: usize, mut index: u64) -> Vec<Scalar> {
    let p = field.order().expect("finite field");
    let mut out = vec![field.zero(); len];
    for slot in (0..len).rev() {
        out[slot] = field.element(index % p);
        index /= p;
    }
    out
}

#[derive(Clone, Debug)]
pub struct ClassificationReport {
    pub candidates: u64,
    pub cocycles: usize,
    pub representatives: Vec<NonAbelianCocycle>,
    pub class_sizes: Vec<usize>,
}

impl ClassificationReport {
    pub fn classes(&self) -> usize {
        self.representatives.len()
    }
}

/// Enumerates all raw triples, keeps the cocycles and groups them into
/// equivalence classes.
pub fn classify_small(c: &RBLieCoalgebra, m: &RBLieCoalgebra, budget: u64, exec: Exec) -> Result<ClassificationReport> {
    c.compatible_with(m)?;
    let field = c.field();
    let k = triple_parameters(c.dim(), m.dim());
    let candidates = point_count(field, k, budget)?;
    let cocycles: Vec<NonAbelianCocycle> = exec
        .filter_map(candidates, |i| {
            let z = triple_from_params(c, m, &vector_at(field, k, i)).ok()?;
            z.check().all().then_some(z)
        });
    let mut representatives: Vec<NonAbelianCocycle> = Vec::new();
    let mut class_sizes: Vec<usize> = Vec::new();
    for z in &cocycles {
        let found = exec.map_slice(&representatives, |r| solve_equivalence(r, z).map(|w| w.is_some()));
        let mut hit = None;
        for (i, res) in found.into_iter().enumerate() {
            if res? && hit.is_none() {
                hit = Some(i);
            }
        }
        match hit {
            Some(i) => class_sizes[i] += 1,
            None => {
                representatives.push(z.clone());
                class_sizes.push(1);
            }
        }
    }
    Ok(ClassificationReport {
        candidates,
        cocycles: cocycles.len(),
        representatives,
        class_sizes,
    })
}
