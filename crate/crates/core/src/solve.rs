//! Affine equations in an unknown linear map.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{FieldSpec, Scalar};
use crate::tensor::{LinearMap, Signature};

/// Shape of an unknown map `X: domain -> codomain`, flattened row-major.
#[derive(Clone, Debug)]
pub struct Unknown {
    pub field: FieldSpec,
    pub domain: Signature,
    pub codomain: Signature,
}

impl Unknown {
    pub fn new(field: FieldSpec, domain: impl Into<Signature>, codomain: impl Into<Signature>) -> Self {
        Unknown {
            field,
            domain: domain.into(),
            codomain: codomain.into(),
        }
    }

    pub fn len(&self) -> usize {
        self.domain.dim() * self.codomain.dim()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn map(&self, v: &[Scalar]) -> LinearMap {
        LinearMap::from_vec(self.domain.clone(), self.codomain.clone(), self.field, v)
    }

    pub fn zero(&self) -> LinearMap {
        LinearMap::zero(self.field, self.domain.clone(), self.codomain.clone())
    }

    fn elementary(&self, k: usize) -> LinearMap {
        let mut v = vec![self.field.zero(); self.len()];
        v[k] = self.field.one();
        self.map(&v)
    }
}

/// Solution set `particular + span(directions)` of an affine system.
#[derive(Clone, Debug)]
pub struct AffineSolution {
    pub unknown: Unknown,
    pub particular: Vec<Scalar>,
    pub directions: Vec<Vec<Scalar>>,
}

impl AffineSolution {
    pub fn particular_map(&self) -> LinearMap {
        self.unknown.map(&self.particular)
    }

    pub fn direction_maps(&self) -> Vec<LinearMap> {
        self.directions.iter().map(|d| self.unknown.map(d)).collect()
    }

    /// `particular + Σ coeffs[i] * directions[i]`.
    pub fn point(&self, coeffs: &[Scalar]) -> LinearMap {
        let mut v = self.particular.clone();
        for (c, d) in coeffs.iter().zip(&self.directions) {
            if c.is_zero() {
                continue;
            }
            for (x, y) in v.iter_mut().zip(d) {
                *x = &*x + &(c * y);
            }
        }
        self.unknown.map(&v)
    }
}

/// An expression affine in the unknown; it must vanish at a solution.
pub type Constraint<'a> = Box<dyn Fn(&LinearMap) -> LinearMap + Sync + 'a>;

/// Matrix `A` and vector `b` with `constraint(X) = A·vec(X) + b` for every
/// constraint, stacked. Linearity is assumed, not checked.
pub fn linearize(unknown: &Unknown, constraints: &[Constraint<'_>]) -> (Matrix, Vec<Scalar>) {
    let n = unknown.len();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut rhs: Vec<Scalar> = Vec::new();
    let zero = unknown.zero();
    for c in constraints {
        let base = c(&zero).to_vec();
        let cols: Vec<Vec<Scalar>> = (0..n)
            .map(|k| {
                let v = c(&unknown.elementary(k)).to_vec();
                v.iter().zip(&base).map(|(a, b)| a - b).collect()
            })
            .collect();
        for (i, b) in base.iter().enumerate() {
            rows.push(cols.iter().map(|col| col[i].clone()).collect());
            rhs.push(-b);
        }
    }
    let a = Matrix::from_rows(unknown.field, n, rows).expect("constraint rows");
    (a, rhs)
}

/// Solves `constraint(X) = 0` for all constraints simultaneously. Returns
/// `None` when the system is inconsistent.
pub fn solve_affine_system(
    unknown: &Unknown,
    constraints: &[Constraint<'_>],
) -> Result<Option<AffineSolution>> {
    let (a, b) = linearize(unknown, constraints);
    let Some(particular) = a.solve(&b)? else {
        return Ok(None);
    };
    let directions = a.kernel_basis();
    Ok(Some(AffineSolution {
        unknown: unknown.clone(),
        particular,
        directions,
    }))
}

/// Number of points of an affine solution set over `GF(p)`, or an error if
/// it exceeds the budget.
pub fn point_count(field: FieldSpec, dimension: usize, budget: u64) -> Result<u64> {
    let p = field
        .order()
        .ok_or_else(|| Error::StructureMismatch("enumeration needs a finite field".into()))?;
    let needed = (p as u128).checked_pow(dimension as u32).unwrap_or(u128::MAX);
    if needed > budget as u128 {
        return Err(Error::SearchBudgetExceeded { needed, budget });
    }
    Ok(needed as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::Space;

    #[test]
    fn solves_commutation_equation() {
        let f = FieldSpec::Rationals;
        let c = Space::standard("c", 2);
        let a = LinearMap::new((&c).into(), (&c).into(), Matrix::from_i64(f, &[&[1, 0], &[0, 2]])).unwrap();
        let unknown = Unknown::new(f, &c, &c);
        let cons: Vec<Constraint> = vec![Box::new(|x: &LinearMap| &(&a * x) - &(x * &a))];
        let sol = solve_affine_system(&unknown, &cons).unwrap().unwrap();
        // diagonal matrices commute with diag(1,2)
        assert_eq!(sol.directions.len(), 2);
        let inconsistent: Vec<Constraint> = vec![
            Box::new(|x: &LinearMap| x.clone()),
            Box::new(|x: &LinearMap| x - &LinearMap::identity(f, &c)),
        ];
        assert!(solve_affine_system(&unknown, &inconsistent).unwrap().is_none());
    }
}
