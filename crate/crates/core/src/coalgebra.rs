//! Weighted Rota-Baxter Lie coalgebras and their dual Lie algebras.

use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Scalar};
use crate::tensor::{flip, kron, LinearMap, Signature, Space};

/// Verdicts for the three coalgebra axioms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub antisymmetry: bool,
    pub cojacobi: bool,
    pub rota_baxter: bool,
}

impl AxiomReport {
    pub fn all(&self) -> bool {
        self.antisymmetry && self.cojacobi && self.rota_baxter
    }

    /// Equation labels paired with their verdicts.
    pub fn entries(&self) -> Vec<(&'static str, bool)> {
        vec![
            ("(1.1)", self.antisymmetry),
            ("(LC)", self.cojacobi),
            ("(R)", self.rota_baxter),
        ]
    }

    fn failing(&self) -> String {
        self.entries()
            .into_iter()
            .filter(|(_, ok)| !ok)
            .map(|(n, _)| n)
            .collect::<Vec<_>>()
            .join(", ")
    }
}

/// `a ⊗ I + I ⊗ b + λ·I ⊗ I` where `a` acts on the first factor and `b` on
/// the second.
pub fn weighted_sum(a: &LinearMap, b: &LinearMap, lambda: &Scalar) -> LinearMap {
    let f = a.field();
    let ia = LinearMap::identity(f, a.domain().clone());
    let ib = LinearMap::identity(f, b.domain().clone());
    let left = kron(a, &ib);
    let right = kron(&ia, b);
    let scalar = kron(&ia, &ib).scale(lambda);
    &(&left + &right) + &scalar
}

/// A λ-weighted Rota-Baxter Lie coalgebra `(C, Δ, R)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RBLieCoalgebra {
    space: Space,
    delta: LinearMap,
    r: LinearMap,
    lambda: Scalar,
}

impl RBLieCoalgebra {
    /// Checked constructor: refuses data violating any axiom.
    pub fn new(space: Space, delta: LinearMap, r: LinearMap, lambda: Scalar) -> Result<Self> {
        let c = Self::raw(space, delta, r, lambda)?;
        let report = c.check();
        if !report.all() {
            return Err(Error::AxiomViolation(report.failing()));
        }
        Ok(c)
    }

    /// Shape-checked but axiom-unchecked constructor for candidate enumeration.
    pub fn raw(space: Space, delta: LinearMap, r: LinearMap, lambda: Scalar) -> Result<Self> {
        let f = lambda.field();
        let d = space.dim();
        if delta.field() != f || r.field() != f {
            return Err(Error::FieldMismatch(f, if delta.field() != f { delta.field() } else { r.field() }));
        }
        if delta.domain().dim() != d || delta.codomain().dim() != d * d {
            return Err(Error::ShapeMismatch("Δ must map C to C ⊗ C".into()));
        }
        if r.domain().dim() != d || r.codomain().dim() != d {
            return Err(Error::ShapeMismatch("R must map C to C".into()));
        }
        let delta = delta.with_signatures((&space).into(), Signature::power(&space, 2))?;
        let r = r.with_signatures((&space).into(), (&space).into())?;
        Ok(RBLieCoalgebra {
            space,
            delta,
            r,
            lambda,
        })
    }

    /// `Δ = 0`, `R = 0`.
    pub fn zero(space: Space, lambda: Scalar) -> Self {
        let f = lambda.field();
        let delta = LinearMap::zero(f, &space, Signature::power(&space, 2));
        let r = LinearMap::zero(f, &space, &space);
        RBLieCoalgebra {
            space,
            delta,
            r,
            lambda,
        }
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn delta(&self) -> &LinearMap {
        &self.delta
    }

    pub fn r(&self) -> &LinearMap {
        &self.r
    }

    pub fn lambda(&self) -> &Scalar {
        &self.lambda
    }

    pub fn field(&self) -> FieldSpec {
        self.lambda.field()
    }

    pub fn identity(&self) -> LinearMap {
        LinearMap::identity(self.field(), &self.space)
    }

    /// `τ` on `C ⊗ C`.
    pub fn tau(&self) -> LinearMap {
        flip(self.field(), &self.space, &self.space)
    }

    /// `Δ = 0`.
    pub fn is_abelian(&self) -> bool {
        self.delta.is_zero()
    }

    pub fn with_r(&self, r: LinearMap) -> Result<Self> {
        Self::new(self.space.clone(), self.delta.clone(), r, self.lambda.clone())
    }

    pub fn check(&self) -> AxiomReport {
        let antisymmetry = antisymmetry_defect(&self.delta, &self.space).is_zero();
        AxiomReport {
            antisymmetry,
            cojacobi: cojacobi_defect(&self.delta, &self.space).is_zero(),
            rota_baxter: rb_defect(self).is_zero(),
        }
    }

    /// Same field and weight.
    pub fn compatible_with(&self, other: &RBLieCoalgebra) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch(self.field(), other.field()));
        }
        if self.lambda != other.lambda {
            return Err(Error::StructureMismatch(format!(
                "weights differ: {} vs {}",
                self.lambda, other.lambda
            )));
        }
        Ok(())
    }

    /// `(C, Δ̃, R)` with `Δ̃ = (I ⊗ R + R ⊗ I + λ) Δ`.
    pub fn derived(&self) -> Result<Self> {
        let delta = &weighted_sum(&self.r, &self.r, &self.lambda) * &self.delta;
        Self::new(self.space.clone(), delta, self.r.clone(), self.lambda.clone()).map_err(|e| {
            Error::InternalInconsistency(format!("derived coalgebra failed its axioms: {e}"))
        })
    }

    /// The dual Lie algebra `(C*, [f, g] = (f ⊗ g)Δ, R* f = f R)`.
    pub fn dualize(&self) -> RBLieAlgebra {
        let labels = self.space.labels().iter().map(|l| format!("{l}*")).collect();
        let space = Space::new(labels).expect("dual labels are distinct");
        let bracket = LinearMap::new(
            Signature::power(&space, 2),
            (&space).into(),
            self.delta.matrix().transpose(),
        )
        .expect("bracket shape");
        let r = LinearMap::new((&space).into(), (&space).into(), self.r.matrix().transpose())
            .expect("operator shape");
        RBLieAlgebra {
            space,
            bracket,
            r,
            lambda: self.lambda.clone(),
        }
    }
}

/// `Δ + τΔ`.
pub fn antisymmetry_defect(delta: &LinearMap, c: &Space) -> LinearMap {
    delta + &(&flip(delta.field(), c, c) * delta)
}

/// `(I ⊗ Δ)Δ − (Δ ⊗ I)Δ + (I ⊗ τ)(Δ ⊗ I)Δ`.
pub fn cojacobi_defect(delta: &LinearMap, c: &Space) -> LinearMap {
    let f = delta.field();
    let id = LinearMap::identity(f, c);
    let d_left = &kron(delta, &id) * delta;
    let d_right = &kron(&id, delta) * delta;
    let twist = kron(&id, &flip(f, c, c));
    &(&d_right - &d_left) + &(&twist * &d_left)
}

/// `(R ⊗ R)Δ − (I ⊗ R + R ⊗ I + λ)ΔR`.
pub fn rb_defect(c: &RBLieCoalgebra) -> LinearMap {
    let lhs = &kron(c.r(), c.r()) * c.delta();
    let rhs = &(&weighted_sum(c.r(), c.r(), c.lambda()) * c.delta()) * c.r();
    &lhs - &rhs
}

pub fn check_antisymmetry(delta: &LinearMap, c: &Space) -> Result<bool> {
    check_delta_shape(delta, c)?;
    Ok(antisymmetry_defect(delta, c).is_zero())
}

pub fn check_cojacobi(delta: &LinearMap, c: &Space) -> Result<bool> {
    check_delta_shape(delta, c)?;
    Ok(cojacobi_defect(delta, c).is_zero())
}

pub fn check_rb(c: &RBLieCoalgebra) -> bool {
    rb_defect(c).is_zero()
}

fn check_delta_shape(delta: &LinearMap, c: &Space) -> Result<()> {
    let d = c.dim();
    if delta.domain().dim() != d || delta.codomain().dim() != d * d {
        return Err(Error::ShapeMismatch("Δ must map C to C ⊗ C".into()));
    }
    Ok(())
}

/// A linear map between two coalgebras, candidate homomorphism.
#[derive(Clone, Debug)]
pub struct CoalgebraMorphism {
    pub source: RBLieCoalgebra,
    pub target: RBLieCoalgebra,
    pub phi: LinearMap,
}

impl CoalgebraMorphism {
    /// `(φ ⊗ φ)Δ = Δ'φ` and `R'φ = φR`.
    pub fn check(&self) -> Result<bool> {
        is_morphism(&self.source, &self.target, &self.phi)
    }
}

pub fn is_morphism(source: &RBLieCoalgebra, target: &RBLieCoalgebra, phi: &LinearMap) -> Result<bool> {
    if phi.domain().dim() != source.dim() || phi.codomain().dim() != target.dim() {
        return Err(Error::ShapeMismatch("morphism shape".into()));
    }
    if phi.field() != source.field() || phi.field() != target.field() {
        return Err(Error::FieldMismatch(source.field(), target.field()));
    }
    let co = &kron(phi, phi) * source.delta() == target.delta() * phi;
    let rb = target.r() * phi == phi * source.r();
    Ok(co && rb)
}

/// A Lie algebra with a Rota-Baxter operator, stored by its bracket map
/// `A ⊗ A -> A`. Its checks loop over structure constants directly and share
/// no code with the coalgebra checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RBLieAlgebra {
    pub space: Space,
    pub bracket: LinearMap,
    pub r: LinearMap,
    pub lambda: Scalar,
}

impl RBLieAlgebra {
    fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Coefficient of `e_k` in `[e_i, e_j]`.
    fn c(&self, i: usize, j: usize, k: usize) -> &Scalar {
        self.bracket.matrix().get(k, i * self.dim() + j)
    }

    fn br(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let d = self.dim();
        let f = self.lambda.field();
        let mut out = vec![f.zero(); d];
        for i in 0..d {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..d {
                if v[j].is_zero() {
                    continue;
                }
                let uv = &u[i] * &v[j];
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.c(i, j, k);
                    if !c.is_zero() {
                        *o = &*o + &(&uv * c);
                    }
                }
            }
        }
        out
    }

    fn apply_r(&self, v: &[Scalar]) -> Vec<Scalar> {
        let d = self.dim();
        let f = self.lambda.field();
        (0..d)
            .map(|a| {
                let mut acc = f.zero();
                for (b, vb) in v.iter().enumerate() {
                    acc = acc + self.r.matrix().get(a, b) * vb;
                }
                acc
            })
            .collect()
    }

    fn basis(&self, i: usize) -> Vec<Scalar> {
        let f = self.lambda.field();
        (0..self.dim()).map(|k| if k == i { f.one() } else { f.zero() }).collect()
    }

    pub fn check_antisymmetry(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| {
            (0..d).all(|j| (0..d).all(|k| (self.c(i, j, k) + self.c(j, i, k)).is_zero()))
        })
    }

    pub fn check_jacobi(&self) -> bool {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                for l in 0..d {
                    let (x, y, z) = (self.basis(i), self.basis(j), self.basis(l));
                    let a = self.br(&x, &self.br(&y, &z));
                    let b = self.br(&y, &self.br(&z, &x));
                    let c = self.br(&z, &self.br(&x, &y));
                    if !a.iter().zip(&b).zip(&c).all(|((p, q), r)| (&(p + q) + r).is_zero()) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `[Rx, Ry] = R([Rx, y] + [x, Ry] + λ[x, y])`.
    pub fn check_rb(&self) -> bool {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                let (x, y) = (self.basis(i), self.basis(j));
                let (rx, ry) = (self.apply_r(&x), self.apply_r(&y));
                let lhs = self.br(&rx, &ry);
                let a = self.br(&rx, &y);
                let b = self.br(&x, &ry);
                let c = self.br(&x, &y);
                let inner: Vec<Scalar> = a
                    .iter()
                    .zip(&b)
                    .zip(&c)
                    .map(|((p, q), r)| &(p + q) + &(r * &self.lambda))
                    .collect();
                if lhs != self.apply_r(&inner) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_valid(&self) -> bool {
        self.check_antisymmetry() && self.check_jacobi() && self.check_rb()
    }

    /// `[R f, g] + [f, R g] + λ[f, g]` as a bracket map.
    pub fn double_bracket(&self) -> LinearMap {
        let b = &self.bracket;
        let sum = weighted_sum(&self.r, &self.r, &self.lambda);
        b * &sum
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix;

    fn two_dim(f: FieldSpec) -> (Space, LinearMap) {
        let c = Space::new(vec!["x".into(), "y".into()]).unwrap();
        // Δx = x⊗y − y⊗x, Δy = 0; rows are x⊗x, x⊗y, y⊗x, y⊗y
        let m = Matrix::from_i64(f, &[&[0, 0], &[1, 0], &[-1, 0], &[0, 0]]);
        let delta = LinearMap::new((&c).into(), Signature::power(&c, 2), m).unwrap();
        (c, delta)
    }

    #[test]
    fn two_dim_axioms() {
        let f = FieldSpec::Rationals;
        let (c, delta) = two_dim(f);
        assert!(check_antisymmetry(&delta, &c).unwrap());
        assert!(check_cojacobi(&delta, &c).unwrap());
        let lambda = f.from_i64(-1);
        let r = LinearMap::new((&c).into(), (&c).into(), Matrix::from_i64(f, &[&[1, 0], &[0, 0]])).unwrap();
        let coalg = RBLieCoalgebra::new(c, delta, r, lambda).unwrap();
        assert!(coalg.derived().unwrap().check().all());
        assert!(coalg.dualize().is_valid());
    }

    #[test]
    fn non_antisymmetric_rejected() {
        let f = FieldSpec::Rationals;
        let c = Space::standard("c", 2);
        let m = Matrix::from_i64(f, &[&[0, 0], &[1, 0], &[0, 0], &[0, 0]]);
        let delta = LinearMap::new((&c).into(), Signature::power(&c, 2), m).unwrap();
        assert!(!check_antisymmetry(&delta, &c).unwrap());
        let r = LinearMap::zero(f, &c, &c);
        assert!(matches!(
            RBLieCoalgebra::new(c, delta, r, f.zero()),
            Err(Error::AxiomViolation(_))
        ));
    }

    #[test]
    fn minus_lambda_identity_is_rb() {
        let f = FieldSpec::Prime(5);
        let (c, delta) = two_dim(f);
        let lambda = f.from_i64(3);
        let r = LinearMap::scalar(&-&lambda, &c);
        let coalg = RBLieCoalgebra::new(c, delta.clone(), r, lambda.clone()).unwrap();
        assert_eq!(coalg.derived().unwrap().delta(), &delta.scale(&-&lambda));
    }
}
