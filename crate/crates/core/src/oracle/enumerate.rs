use crate::coalgebra::{check_antisymmetry, check_cojacobi, RBLieCoalgebra};
use crate::comodule::RBComodule;
use crate::error::Result;
use crate::extension::{triple_parameters, vector_at};
use crate::scalar::{FieldSpec, Scalar};
use crate::solve::point_count;
use crate::tensor::{LinearMap, Signature, Space};

/// What the flat parameter vectors describe.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StructureKind {
    /// Matrices `domain -> codomain`.
    LinearMaps { domain: usize, codomain: usize },
    /// Candidate `Δ: C -> C ⊗ C`.
    Comultiplications { dim: usize },
    /// Candidate `R: C -> C`.
    RbOperators { dim: usize },
    /// Candidate `(ρ, R_M)` with `ρ: M -> M ⊗ C`.
    Comodules { dim_m: usize, dim_c: usize },
    /// Candidate `(h, ρ, φ)`.
    Triples { dim_c: usize, dim_m: usize },
}

impl StructureKind {
    pub fn parameters(self) -> usize {
        match self {
            StructureKind::LinearMaps { domain, codomain } => domain * codomain,
            StructureKind::Comultiplications { dim } => dim * dim * dim,
            StructureKind::RbOperators { dim } => dim * dim,
            StructureKind::Comodules { dim_m, dim_c } => dim_m * dim_m * dim_c + dim_m * dim_m,
            StructureKind::Triples { dim_c, dim_m } => triple_parameters(dim_c, dim_m),
        }
    }
}

/// All flat parameter vectors of a kind over `GF(p)`, in lexicographic order.
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub field: FieldSpec,
    pub kind: StructureKind,
    pub len: usize,
    pub count: u64,
}

impl Enumeration {
    pub fn get(&self, index: u64) -> Vec<Scalar> {
        vector_at(self.field, self.len, index)
    }

    pub fn iter(&self) -> EnumerationIter<'_> {
        EnumerationIter { source: self, cursor: 0 }
    }
}

pub struct EnumerationIter<'a> {
    source: &'a Enumeration,
    cursor: u64,
}

impl Iterator for EnumerationIter<'_> {
    type Item = Vec<Scalar>;

    fn next(&mut self) -> Option<Vec<Scalar>> {
        if self.cursor >= self.source.count {
            return None;
        }
        let v = self.source.get(self.cursor);
        self.cursor += 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.source.count - self.cursor) as usize;
        (left, Some(left))
    }
}

/// Raw candidates; the caller filters them through the checkers.
pub fn enumerate_structures(field: FieldSpec, kind: StructureKind, budget: u64) -> Result<Enumeration> {
    let len = kind.parameters();
    let count = point_count(field, len, budget)?;
    Ok(Enumeration { field, kind, len, count })
}

/// Every Lie coalgebra structure `(Δ, R = 0)` of the given dimension.
pub fn lie_coalgebras(field: FieldSpec, dim: usize, lambda: &Scalar, budget: u64) -> Result<Vec<RBLieCoalgebra>> {
    let en = enumerate_structures(field, StructureKind::Comultiplications { dim }, budget)?;
    let c = Space::standard("c", dim);
    let mut out = Vec::new();
    for v in en.iter() {
        let delta = LinearMap::from_vec((&c).into(), Signature::power(&c, 2), field, &v);
        if check_antisymmetry(&delta, &c)? && check_cojacobi(&delta, &c)? {
            out.push(RBLieCoalgebra::raw(c.clone(), delta, LinearMap::zero(field, &c, &c), lambda.clone())?);
        }
    }
    Ok(out)
}

/// Every Rota-Baxter operator of weight `λ` on the coalgebra `(C, Δ)`.
pub fn rb_operators(c: &RBLieCoalgebra, budget: u64) -> Result<Vec<LinearMap>> {
    let f = c.field();
    let en = enumerate_structures(f, StructureKind::RbOperators { dim: c.dim() }, budget)?;
    let s = c.space();
    let mut out = Vec::new();
    for v in en.iter() {
        let r = LinearMap::from_vec(s.into(), s.into(), f, &v);
        if RBLieCoalgebra::raw(s.clone(), c.delta().clone(), r.clone(), c.lambda().clone())?.check().rota_baxter {
            out.push(r);
        }
    }
    Ok(out)
}

/// Every comodule of dimension `dim_m` over `c`.
pub fn comodules_on(c: &RBLieCoalgebra, dim_m: usize, budget: u64) -> Result<Vec<RBComodule>> {
    let f = c.field();
    let kind = StructureKind::Comodules { dim_m, dim_c: c.dim() };
    let en = enumerate_structures(f, kind, budget)?;
    let m = Space::standard("m", dim_m);
    let split = dim_m * dim_m * c.dim();
    let mut out = Vec::new();
    for v in en.iter() {
        let rho = LinearMap::from_vec((&m).into(), Signature::new(vec![m.clone(), c.space().clone()]), f, &v[..split]);
        let r_m = LinearMap::from_vec((&m).into(), (&m).into(), f, &v[split..]);
        let com = RBComodule::raw(c.clone(), m.clone(), rho, r_m)?;
        if com.check().all() {
            out.push(com);
        }
    }
    Ok(out)
}
