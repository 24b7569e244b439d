//! Right Lie comodules over weighted Rota-Baxter Lie coalgebras.

use crate::coalgebra::{weighted_sum, RBLieCoalgebra};
use crate::error::{Error, Result};
use crate::scalar::FieldSpec;
use crate::tensor::{flip, kron, LinearMap, Signature, Space};

/// A right comodule `(M, ρ, R_M)` with `ρ: M -> M ⊗ C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RBComodule {
    base: RBLieCoalgebra,
    space: Space,
    rho: LinearMap,
    r_m: LinearMap,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComoduleReport {
    pub coaction: bool,
    pub rota_baxter: bool,
}

impl ComoduleReport {
    pub fn all(&self) -> bool {
        self.coaction && self.rota_baxter
    }

    pub fn entries(&self) -> Vec<(&'static str, bool)> {
        vec![("(com)", self.coaction), ("(rR)", self.rota_baxter)]
    }
}

impl RBComodule {
    pub fn new(base: RBLieCoalgebra, space: Space, rho: LinearMap, r_m: LinearMap) -> Result<Self> {
        let m = Self::raw(base, space, rho, r_m)?;
        let report = m.check();
        if !report.all() {
            let failing: Vec<_> = report
                .entries()
                .into_iter()
                .filter(|(_, ok)| !ok)
                .map(|(n, _)| n)
                .collect();
            return Err(Error::AxiomViolation(failing.join(", ")));
        }
        Ok(m)
    }

    pub fn raw(base: RBLieCoalgebra, space: Space, rho: LinearMap, r_m: LinearMap) -> Result<Self> {
        let f = base.field();
        if rho.field() != f || r_m.field() != f {
            return Err(Error::FieldMismatch(f, rho.field()));
        }
        let (dm, dc) = (space.dim(), base.dim());
        if rho.domain().dim() != dm || rho.codomain().dim() != dm * dc {
            return Err(Error::ShapeMismatch("ρ must map M to M ⊗ C".into()));
        }
        if r_m.domain().dim() != dm || r_m.codomain().dim() != dm {
            return Err(Error::ShapeMismatch("R_M must map M to M".into()));
        }
        let rho = rho.with_signatures(
            (&space).into(),
            Signature::new(vec![space.clone(), base.space().clone()]),
        )?;
        let r_m = r_m.with_signatures((&space).into(), (&space).into())?;
        Ok(RBComodule {
            base,
            space,
            rho,
            r_m,
        })
    }

    /// `ρ = 0`, `R_M = 0`.
    pub fn trivial(base: RBLieCoalgebra, space: Space) -> Self {
        let f = base.field();
        let rho = LinearMap::zero(f, &space, Signature::new(vec![space.clone(), base.space().clone()]));
        let r_m = LinearMap::zero(f, &space, &space);
        RBComodule {
            base,
            space,
            rho,
            r_m,
        }
    }

    /// `M = C`, `ρ = Δ`, `R_M = R`.
    pub fn adjoint(base: &RBLieCoalgebra) -> Self {
        RBComodule {
            base: base.clone(),
            space: base.space().clone(),
            rho: base.delta().clone(),
            r_m: base.r().clone(),
        }
    }

    pub fn base(&self) -> &RBLieCoalgebra {
        &self.base
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn rho(&self) -> &LinearMap {
        &self.rho
    }

    pub fn r_m(&self) -> &LinearMap {
        &self.r_m
    }

    pub fn field(&self) -> FieldSpec {
        self.base.field()
    }

    pub fn check(&self) -> ComoduleReport {
        ComoduleReport {
            coaction: coaction_defect(self).is_zero(),
            rota_baxter: rb_comodule_defect(self).is_zero(),
        }
    }

    /// `(M, (I ⊗ R_C)ρ − ρR_M, R_M)` over the derived coalgebra.
    pub fn derived(&self) -> Result<Self> {
        let base = self.base.derived()?;
        let f = self.field();
        let im = LinearMap::identity(f, &self.space);
        let rho = &(&kron(&im, self.base.r()) * &self.rho) - &(&self.rho * &self.r_m);
        Self::new(base, self.space.clone(), rho, self.r_m.clone()).map_err(|e| {
            Error::InternalInconsistency(format!("derived comodule failed its axioms: {e}"))
        })
    }
}

/// `(I ⊗ Δ_C)ρ − (ρ ⊗ I)ρ + (I ⊗ τ)(ρ ⊗ I)ρ`.
pub fn coaction_defect(m: &RBComodule) -> LinearMap {
    let f = m.field();
    let c = m.base.space();
    let im = LinearMap::identity(f, &m.space);
    let ic = LinearMap::identity(f, c);
    let a = &kron(&im, m.base.delta()) * &m.rho;
    let b = &kron(&m.rho, &ic) * &m.rho;
    let twist = kron(&im, &flip(f, c, c));
    &(&a - &b) + &(&twist * &b)
}

/// `(R_M ⊗ R_C)ρ − (R_M ⊗ I + I ⊗ R_C + λ)ρR_M`.
pub fn rb_comodule_defect(m: &RBComodule) -> LinearMap {
    let lhs = &kron(&m.r_m, m.base.r()) * &m.rho;
    let rhs = &(&weighted_sum(&m.r_m, m.base.r(), m.base.lambda()) * &m.rho) * &m.r_m;
    &lhs - &rhs
}

pub fn check_comodule(m: &RBComodule) -> bool {
    coaction_defect(m).is_zero()
}

pub fn check_rb_comodule(m: &RBComodule) -> bool {
    rb_comodule_defect(m).is_zero()
}
