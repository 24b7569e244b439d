//! Automorphism pairs, extensibility and the Wells map.

use std::collections::HashSet;

use crate::coalgebra::{is_morphism, RBLieCoalgebra};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::extension::{
    cocycle_from_extension, solve_equivalence, vector_at, EquivalenceWitness, ExtensionSES, NonAbelianCocycle,
};
use crate::scalar::Scalar;
use crate::solve::{point_count, solve_affine_system, AffineSolution, Constraint, Unknown};
use crate::tensor::{kron, LinearMap};

pub const EXTENSIBILITY_EQUATIONS: [&str; 3] = ["(AE1)", "(AE2)", "(AE3)"];

/// `(α, β) ∈ Aut(C) × Aut(M)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AutPair {
    pub alpha: LinearMap,
    pub beta: LinearMap,
}

impl AutPair {
    pub fn identity(c: &RBLieCoalgebra, m: &RBLieCoalgebra) -> Self {
        AutPair { alpha: c.identity(), beta: m.identity() }
    }

    /// Componentwise composition `(αα', ββ')`.
    pub fn compose(&self, other: &AutPair) -> AutPair {
        AutPair { alpha: &self.alpha * &other.alpha, beta: &self.beta * &other.beta }
    }

    pub fn inverse(&self) -> Result<AutPair> {
        Ok(AutPair {
            alpha: self.alpha.inverse().ok_or(Error::NotInvertible)?,
            beta: self.beta.inverse().ok_or(Error::NotInvertible)?,
        })
    }

    /// Both components are bijective Rota-Baxter coalgebra automorphisms.
    pub fn is_valid(&self, c: &RBLieCoalgebra, m: &RBLieCoalgebra) -> Result<bool> {
        Ok(self.alpha.is_invertible()
            && self.beta.is_invertible()
            && is_morphism(c, c, &self.alpha)?
            && is_morphism(m, m, &self.beta)?)
    }
}

fn beta_inverse(p: &AutPair) -> Result<LinearMap> {
    p.beta.inverse().ok_or(Error::NotInvertible)
}

/// `((α⊗α)hβ⁻¹, (β⊗α)ρβ⁻¹, αφβ⁻¹)`.
pub fn induced_cocycle(z: &NonAbelianCocycle, p: &AutPair) -> Result<NonAbelianCocycle> {
    let bi = beta_inverse(p)?;
    let (a, b) = (&p.alpha, &p.beta);
    let h = &(&kron(a, a) * z.h()) * &bi;
    let rho = &(&kron(b, a) * z.rho()) * &bi;
    let phi = &(a * z.phi()) * &bi;
    z.with_maps(h, rho, phi)
        .map_err(|e| Error::InternalInconsistency(format!("induced triple is not a cocycle: {e}")))
}

/// Direct evaluation of (AE1)-(AE3) for a candidate `φ`.
pub fn extensibility_defects(z: &NonAbelianCocycle, p: &AutPair, v: &LinearMap) -> [LinearMap; 3] {
    let (a, b) = (&p.alpha, &p.beta);
    let c = z.c();
    let m = z.m();
    let va = &kron(v, a) * z.rho();
    let lhs1 = &(z.h() * b) - &(&kron(a, a) * z.h());
    let rhs1 = &(&(&va - &(&c.tau() * &va)) - &(c.delta() * v)) + &(&kron(v, v) * m.delta());
    let lhs2 = &(z.rho() * b) - &(&kron(b, a) * z.rho());
    let rhs2 = &kron(b, v) * m.delta();
    let lhs3 = &(z.phi() * b) - &(a * z.phi());
    let rhs3 = &(v * m.r()) - &(c.r() * v);
    [&lhs1 - &rhs1, &lhs2 - &rhs2, &lhs3 - &rhs3]
}

/// All `φ` satisfying (AE1)-(AE3) for the extension's cocycle.
///
/// (AE2) fixes `(I⊗φ)Δ_M = (β⁻¹⊗I)(ρβ − (β⊗α)ρ)`, which turns the quadratic
/// term of (AE1) into `(φβ⁻¹⊗I)(ρβ − (β⊗α)ρ)`; the system is affine.
pub fn extensibility_solutions(z: &NonAbelianCocycle, p: &AutPair) -> Result<Option<AffineSolution>> {
    let f = z.field();
    let (a, b) = (&p.alpha, &p.beta);
    let bi = beta_inverse(p)?;
    let c = z.c();
    let m = z.m();
    let ic = LinearMap::identity(f, c.space());
    let tau = c.tau();
    let d = &(z.rho() * b) - &(&kron(b, a) * z.rho());
    let lhs1 = &(z.h() * b) - &(&kron(a, a) * z.h());
    let lhs3 = &(z.phi() * b) - &(a * z.phi());
    let unknown = Unknown::new(f, m.space(), c.space());
    let constraints: Vec<Constraint> = vec![
        Box::new(|v: &LinearMap| {
            let va = &kron(v, a) * z.rho();
            let quad = &kron(&(v * &bi), &ic) * &d;
            &(&(&(&va - &(&tau * &va)) - &(c.delta() * v)) + &quad) - &lhs1
        }),
        Box::new(|v: &LinearMap| &(&kron(b, v) * m.delta()) - &d),
        Box::new(|v: &LinearMap| &(&(v * m.r()) - &(c.r() * v)) - &lhs3),
    ];
    solve_affine_system(&unknown, &constraints)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensibilityVerdict {
    pub extensible: bool,
    pub witness: Option<LinearMap>,
    pub gamma: Option<LinearMap>,
}

/// `γ = f(αt + φg) + sβg`, the lift of `(α, β)` determined by `φ`.
pub fn gamma_from_witness(x: &ExtensionSES, p: &AutPair, v: &LinearMap) -> Result<LinearMap> {
    let (t, s) = x.splitting()?;
    let inner = &(&p.alpha * &t) + &(v * &x.g);
    Ok(&(&x.f * &inner) + &(&(&s * &p.beta) * &x.g))
}

/// Is `γ` an automorphism of `E` with `fα = γf` and `βg = gγ`?
pub fn check_lift(x: &ExtensionSES, p: &AutPair, gamma: &LinearMap) -> Result<bool> {
    Ok(gamma.is_invertible()
        && is_morphism(&x.e, &x.e, gamma)?
        && &x.f * &p.alpha == gamma * &x.f
        && &p.beta * &x.g == &x.g * gamma)
}

/// Decides whether `(α, β)` lifts to an automorphism of `E`; on success the
/// lift is built and verified.
pub fn decide_extensible(x: &ExtensionSES, p: &AutPair) -> Result<ExtensibilityVerdict> {
    let z = cocycle_from_extension(x)?;
    let Some(sol) = extensibility_solutions(&z, p)? else {
        return Ok(ExtensibilityVerdict { extensible: false, witness: None, gamma: None });
    };
    let v = sol.particular_map();
    if !extensibility_defects(&z, p, &v).iter().all(LinearMap::is_zero) {
        return Err(Error::InternalInconsistency("solved φ fails (AE1)-(AE3)".into()));
    }
    let gamma = gamma_from_witness(x, p, &v)?;
    if !check_lift(x, p, &gamma)? {
        return Err(Error::InternalInconsistency("constructed lift is not an automorphism".into()));
    }
    Ok(ExtensibilityVerdict { extensible: true, witness: Some(v), gamma: Some(gamma) })
}

/// Checks a caller-supplied `φ` against (AE1)-(AE3).
pub fn verify_extensibility_witness(x: &ExtensionSES, p: &AutPair, v: &LinearMap) -> Result<[bool; 3]> {
    let z = cocycle_from_extension(x)?;
    Ok(extensibility_defects(&z, p, v).map(|d| d.is_zero()))
}

/// The class of `(h_{(α,β)}, ρ_{(α,β)}, φ_{(α,β)}) − (h, ρ, φ)`.
#[derive(Clone, Debug)]
pub struct WellsClass {
    pub original: NonAbelianCocycle,
    pub induced: NonAbelianCocycle,
    pub difference: [LinearMap; 3],
    pub witness: Option<EquivalenceWitness>,
}

impl WellsClass {
    pub fn is_zero(&self) -> bool {
        self.witness.is_some()
    }
}

pub fn wells_map(x: &ExtensionSES, p: &AutPair) -> Result<WellsClass> {
    let original = cocycle_from_extension(x)?;
    let induced = induced_cocycle(&original, p)?;
    let difference = [
        induced.h() - original.h(),
        induced.rho() - original.rho(),
        induced.phi() - original.phi(),
    ];
    let witness = solve_equivalence(&original, &induced)?;
    Ok(WellsClass { original, induced, difference, witness })
}

/// Does `γ` map `f(C)` into itself?
pub fn preserves_c(x: &ExtensionSES, gamma: &LinearMap) -> bool {
    (&(&x.g * gamma) * &x.f).is_zero()
}

/// `K(γ) = (tγf, gγs)`.
pub fn k_map(x: &ExtensionSES, gamma: &LinearMap) -> Result<AutPair> {
    if !preserves_c(x, gamma) {
        return Err(Error::NotCPreserving);
    }
    let (t, s) = x.splitting()?;
    Ok(AutPair { alpha: &(&t * gamma) * &x.f, beta: &(&x.g * gamma) * &s })
}

/// Constraints of the non-abelian 1-cocycles; all homogeneous and linear.
fn z1_nab_solutions(z: &NonAbelianCocycle) -> Result<AffineSolution> {
    let f = z.field();
    let c = z.c();
    let m = z.m();
    let ic = LinearMap::identity(f, c.space());
    let im = LinearMap::identity(f, m.space());
    let tau = c.tau();
    let unknown = Unknown::new(f, m.space(), c.space());
    let constraints: Vec<Constraint> = vec![
        Box::new(|v: &LinearMap| {
            let vr = &kron(v, &ic) * z.rho();
            &(&vr - &(&tau * &vr)) - &(c.delta() * v)
        }),
        Box::new(|v: &LinearMap| &kron(&im, v) * m.delta()),
        Box::new(|v: &LinearMap| &(v * m.r()) - &(c.r() * v)),
    ];
    Ok(solve_affine_system(&unknown, &constraints)?.expect("homogeneous system is consistent"))
}

/// Basis of `Z¹_nab`. The term `(φ⊗φ)Δ_M` equals `(φ⊗I)(I⊗φ)Δ_M`, which
/// vanishes on the solution set, so `Z¹_nab` is a linear subspace.
pub fn z1_nab_basis(z: &NonAbelianCocycle) -> Result<Vec<LinearMap>> {
    Ok(z1_nab_solutions(z)?.direction_maps())
}

/// Direct membership test for `Z¹_nab`, quadratic term included.
pub fn is_z1_nab(z: &NonAbelianCocycle, v: &LinearMap) -> bool {
    let f = z.field();
    let c = z.c();
    let m = z.m();
    let ic = LinearMap::identity(f, c.space());
    let im = LinearMap::identity(f, m.space());
    let vr = &kron(v, &ic) * z.rho();
    let first = &(&vr - &(&c.tau() * &vr)) - &(&(c.delta() * v) - &(&kron(v, v) * m.delta()));
    first.is_zero() && (&kron(&im, v) * m.delta()).is_zero() && (&(v * m.r()) - &(c.r() * v)).is_zero()
}

/// `χ(γ) = tγs − ts` for `γ` in the kernel of `K`.
pub fn chi_map(x: &ExtensionSES, gamma: &LinearMap) -> Result<LinearMap> {
    let k = k_map(x, gamma)?;
    if k != AutPair::identity(&x.c, &x.m) {
        return Err(Error::MembershipViolation("γ is not in the kernel of K".into()));
    }
    let (t, s) = x.splitting()?;
    Ok(&(&(&t * gamma) * &s) - &(&t * &s))
}

/// `γ = fφg + I_E` for `φ ∈ Z¹_nab`.
pub fn gamma_from_phi(x: &ExtensionSES, v: &LinearMap) -> Result<LinearMap> {
    let z = cocycle_from_extension(x)?;
    if !is_z1_nab(&z, v) {
        return Err(Error::MembershipViolation("φ is not a non-abelian 1-cocycle".into()));
    }
    let ie = LinearMap::identity(x.field(), x.e.space());
    Ok(&(&(&x.f * v) * &x.g) + &ie)
}

/// `ρβ = (β⊗α)ρ`.
pub fn compatible_pair_check(rho: &LinearMap, p: &AutPair) -> bool {
    rho * &p.beta == &kron(&p.beta, &p.alpha) * rho
}

/// All automorphisms of a coalgebra over `GF(p)`, lexicographic order.
pub fn automorphisms(c: &RBLieCoalgebra, budget: u64, exec: Exec) -> Result<Vec<LinearMap>> {
    let f = c.field();
    let d = c.dim();
    let count = point_count(f, d * d, budget)?;
    let sig = c.space();
    Ok(exec.filter_map(count, |i| {
        let a = LinearMap::from_vec(sig.into(), sig.into(), f, &vector_at(f, d * d, i));
        (a.is_invertible() && is_morphism(c, c, &a).unwrap_or(false)).then_some(a)
    }))
}

/// `Aut_C(E)`: automorphisms of `E` preserving `f(C)`.
pub fn c_preserving_automorphisms(x: &ExtensionSES, budget: u64, exec: Exec) -> Result<Vec<LinearMap>> {
    Ok(automorphisms(&x.e, budget, exec)?
        .into_iter()
        .filter(|g| preserves_c(x, g))
        .collect())
}

/// Exactness verdicts for `0 → Z¹_nab → Aut_C(E) → P → H²_nab` where `P`
/// is `Aut(C) × Aut(M)` or, in abelian mode, the compatible pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceChecks {
    pub pairs: usize,
    pub first_map_injective: bool,
    pub kernel_k_is_image: bool,
    pub chi_round_trip: bool,
    pub chi_additive: bool,
    pub kernel_w_is_image_k: bool,
    pub extensible_iff_zero_class: bool,
    pub non_extensible_pairs: usize,
}

impl SequenceChecks {
    pub fn exact(&self) -> bool {
        self.first_map_injective
            && self.kernel_k_is_image
            && self.chi_round_trip
            && self.chi_additive
            && self.kernel_w_is_image_k
            && self.extensible_iff_zero_class
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WellsSequenceReport {
    pub aut_c_e: usize,
    pub z1_nab: usize,
    pub general: SequenceChecks,
    pub abelian: Option<SequenceChecks>,
    pub compatible_closed: Option<bool>,
}

impl WellsSequenceReport {
    pub fn exact(&self) -> bool {
        self.general.exact()
            && self.abelian.as_ref().is_none_or(SequenceChecks::exact)
            && self.compatible_closed.unwrap_or(true)
    }
}

fn key(m: &LinearMap) -> Vec<Scalar> {
    m.to_vec()
}

/// Enumerates every group in the sequence and checks exactness elementwise.
pub fn wells_sequence_check(x: &ExtensionSES, budget: u64, exec: Exec) -> Result<WellsSequenceReport> {
    let x = x.with_splitting()?;
    let f = x.field();
    let z = cocycle_from_extension(&x)?;
    let (dc, dm, de) = (x.c.dim(), x.m.dim(), x.e.dim());
    let needed = [de * de, dc * dc, dm * dm]
        .iter()
        .map(|&k| point_count(f, k, budget))
        .collect::<Result<Vec<_>>>()?;
    if needed.iter().sum::<u64>() > budget {
        return Err(Error::SearchBudgetExceeded { needed: needed.iter().map(|&n| n as u128).sum(), budget });
    }

    let aut_e = c_preserving_automorphisms(&x, budget, exec)?;
    let z1 = z1_nab_solutions(&z)?;
    let z1_count = point_count(f, z1.directions.len(), budget)?;
    let z1_elems: Vec<LinearMap> = (0..z1_count)
        .map(|i| z1.point(&vector_at(f, z1.directions.len(), i)))
        .collect();

    // first map: φ ↦ fφg + I
    let lifted: Vec<LinearMap> = z1_elems.iter().map(|v| gamma_from_phi(&x, v)).collect::<Result<_>>()?;
    let distinct: HashSet<Vec<Scalar>> = lifted.iter().map(key).collect();
    let first_map_injective = distinct.len() == lifted.len();

    let id_pair = AutPair::identity(&x.c, &x.m);
    let ks: Vec<AutPair> = aut_e.iter().map(|g| k_map(&x, g)).collect::<Result<_>>()?;
    let kernel: HashSet<Vec<Scalar>> = aut_e
        .iter()
        .zip(&ks)
        .filter(|(_, k)| **k == id_pair)
        .map(|(g, _)| key(g))
        .collect();
    let kernel_k_is_image = kernel == distinct;

    let mut chi_round_trip = true;
    for (v, g) in z1_elems.iter().zip(&lifted) {
        if chi_map(&x, g)? != *v || gamma_from_phi(&x, v)? != *g {
            chi_round_trip = false;
        }
    }
    let mut chi_additive = true;
    for g1 in &lifted {
        for g2 in &lifted {
            let sum = &chi_map(&x, g1)? + &chi_map(&x, g2)?;
            if chi_map(&x, &(g1 * g2))? != sum {
                chi_additive = false;
            }
        }
    }

    let image_k: HashSet<AutPair> = ks.iter().cloned().collect();
    let aut_c = automorphisms(&x.c, budget, exec)?;
    let aut_m = automorphisms(&x.m, budget, exec)?;
    let all_pairs: Vec<AutPair> = aut_c
        .iter()
        .flat_map(|a| aut_m.iter().map(move |b| AutPair { alpha: a.clone(), beta: b.clone() }))
        .collect();

    let evaluate = |pairs: &[AutPair]| -> Result<SequenceChecks> {
        let verdicts = exec.map_slice(pairs, |p| -> Result<(bool, bool)> {
            let zero = wells_map(&x, p)?.is_zero();
            let ext = decide_extensible(&x, p)?.extensible;
            Ok((zero, ext))
        });
        let mut kernel_w_is_image_k = true;
        let mut extensible_iff_zero_class = true;
        let mut non_extensible_pairs = 0;
        for (p, v) in pairs.iter().zip(verdicts) {
            let (zero, ext) = v?;
            if zero != image_k.contains(p) {
                kernel_w_is_image_k = false;
            }
            if zero != ext {
                extensible_iff_zero_class = false;
            }
            if !ext {
                non_extensible_pairs += 1;
            }
        }
        Ok(SequenceChecks {
            pairs: pairs.len(),
            first_map_injective,
            kernel_k_is_image,
            chi_round_trip,
            chi_additive,
            kernel_w_is_image_k,
            extensible_iff_zero_class,
            non_extensible_pairs,
        })
    };

    let general = evaluate(&all_pairs)?;
    let (abelian, compatible_closed) = if x.m.is_abelian() {
        let compatible: Vec<AutPair> = all_pairs
            .iter()
            .filter(|p| compatible_pair_check(z.rho(), p))
            .cloned()
            .collect();
        let set: HashSet<AutPair> = compatible.iter().cloned().collect();
        let mut closed = true;
        for p in &compatible {
            if !set.contains(&p.inverse()?) {
                closed = false;
            }
            for q in &compatible {
                if !set.contains(&p.compose(q)) {
                    closed = false;
                }
            }
        }
        // pairs in the image of K are always compatible
        let image_inside = image_k.iter().all(|p| set.contains(p));
        let mut checks = evaluate(&compatible)?;
        checks.kernel_w_is_image_k &= image_inside;
        (Some(checks), Some(closed))
    } else {
        (None, None)
    };

    Ok(WellsSequenceReport {
        aut_c_e: aut_e.len(),
        z1_nab: z1_elems.len(),
        general,
        abelian,
        compatible_closed,
    })
}
