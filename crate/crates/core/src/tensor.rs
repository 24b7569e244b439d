//! Spaces, tensor signatures and linear maps between tensor products.
//!
//! Basis vectors of `V ⊗ W` are ordered row-major: `e_i ⊗ e_j` has index
//! `i * dim(W) + j`. This convention is also the one used by the file format.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{FieldSpec, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct SpaceData {
    labels: Vec<String>,
}

/// A finite-dimensional space with named basis vectors. Cheap to clone.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Space(Arc<SpaceData>);

impl Space {
    pub fn new(labels: Vec<String>) -> Result<Self> {
        if !labels.iter().all_unique() {
            return Err(Error::ShapeMismatch("basis labels must be distinct".into()));
        }
        Ok(Space(Arc::new(SpaceData { labels })))
    }

    /// Space with labels `prefix0, prefix1, ...`.
    pub fn standard(prefix: &str, dim: usize) -> Self {
        Space(Arc::new(SpaceData {
            labels: (0..dim).map(|i| format!("{prefix}{i}")).collect(),
        }))
    }

    pub fn dim(&self) -> usize {
        self.0.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }

    /// Ordered direct sum: basis of `self` first, then `other`.
    pub fn direct_sum(&self, other: &Space) -> Space {
        let mut labels = self.labels().to_vec();
        for l in other.labels() {
            let mut name = l.clone();
            while labels.contains(&name) {
                name.push('\'');
            }
            labels.push(name);
        }
        Space(Arc::new(SpaceData { labels }))
    }
}

impl fmt::Debug for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Space{:?}", self.0.labels)
    }
}

/// Ordered list of tensor factors; the empty list is the ground field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Signature(Vec<Space>);

impl Signature {
    pub fn new(factors: Vec<Space>) -> Self {
        Signature(factors)
    }

    pub fn ground() -> Self {
        Signature(Vec::new())
    }

    /// `⊗ⁿ space`.
    pub fn power(space: &Space, n: usize) -> Self {
        Signature(vec![space.clone(); n])
    }

    pub fn factors(&self) -> &[Space] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.iter().map(Space::dim).product()
    }

    pub fn concat(&self, other: &Signature) -> Signature {
        Signature(self.0.iter().chain(&other.0).cloned().collect())
    }
}

impl From<&Space> for Signature {
    fn from(s: &Space) -> Self {
        Signature(vec![s.clone()])
    }
}

impl From<Space> for Signature {
    fn from(s: Space) -> Self {
        Signature(vec![s])
    }
}

/// A matrix together with the tensor shapes of its domain and codomain.
///
/// Composition and addition only compare total dimensions, so `k ⊗ C` and
/// `C` are interchangeable.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearMap {
    domain: Signature,
    codomain: Signature,
    matrix: Matrix,
}

impl LinearMap {
    pub fn new(domain: Signature, codomain: Signature, matrix: Matrix) -> Result<Self> {
        if matrix.rows() != codomain.dim() || matrix.cols() != domain.dim() {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} matrix for a map of dimension {} -> {}",
                matrix.rows(),
                matrix.cols(),
                domain.dim(),
                codomain.dim()
            )));
        }
        Ok(LinearMap {
            domain,
            codomain,
            matrix,
        })
    }

    pub fn zero(field: FieldSpec, domain: impl Into<Signature>, codomain: impl Into<Signature>) -> Self {
        let (domain, codomain) = (domain.into(), codomain.into());
        let matrix = Matrix::zeros(field, codomain.dim(), domain.dim());
        LinearMap {
            domain,
            codomain,
            matrix,
        }
    }

    pub fn identity(field: FieldSpec, sig: impl Into<Signature>) -> Self {
        let sig = sig.into();
        let matrix = Matrix::identity(field, sig.dim());
        LinearMap {
            domain: sig.clone(),
            codomain: sig,
            matrix,
        }
    }

    /// Multiple of the identity.
    pub fn scalar(s: &Scalar, sig: impl Into<Signature>) -> Self {
        LinearMap::identity(s.field(), sig).scale(s)
    }

    pub fn domain(&self) -> &Signature {
        &self.domain
    }

    pub fn codomain(&self) -> &Signature {
        &self.codomain
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn field(&self) -> FieldSpec {
        self.matrix.field()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn with_signatures(&self, domain: Signature, codomain: Signature) -> Result<Self> {
        LinearMap::new(domain, codomain, self.matrix.clone())
    }

    /// Composition `self ∘ other`.
    pub fn try_compose(&self, other: &LinearMap) -> Result<LinearMap> {
        Ok(LinearMap {
            domain: other.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: self.matrix.try_mul(&other.matrix)?,
        })
    }

    pub fn try_add(&self, other: &LinearMap) -> Result<LinearMap> {
        Ok(LinearMap {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: self.matrix.try_add(&other.matrix)?,
        })
    }

    pub fn try_sub(&self, other: &LinearMap) -> Result<LinearMap> {
        Ok(LinearMap {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: self.matrix.try_sub(&other.matrix)?,
        })
    }

    pub fn scale(&self, s: &Scalar) -> LinearMap {
        LinearMap {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: self.matrix.scale(s),
        }
    }

    /// `self ⊗ other`.
    pub fn tensor(&self, other: &LinearMap) -> LinearMap {
        kron(self, other)
    }

    pub fn transpose(&self) -> LinearMap {
        LinearMap {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            matrix: self.matrix.transpose(),
        }
    }

    pub fn inverse(&self) -> Option<LinearMap> {
        Some(LinearMap {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            matrix: self.matrix.inverse()?,
        })
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.matrix.mul_vec(v)
    }

    /// Image of the `j`-th domain basis vector.
    pub fn column(&self, j: usize) -> Vec<Scalar> {
        self.matrix.column(j)
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        self.matrix.kernel_basis()
    }

    pub fn is_invertible(&self) -> bool {
        self.matrix.rows() == self.matrix.cols() && self.matrix.rank() == self.matrix.rows()
    }

    /// Entries flattened row-major (codomain index major).
    pub fn to_vec(&self) -> Vec<Scalar> {
        self.matrix.entries().to_vec()
    }

    pub fn from_vec(domain: Signature, codomain: Signature, field: FieldSpec, v: &[Scalar]) -> Self {
        let (r, c) = (codomain.dim(), domain.dim());
        assert_eq!(v.len(), r * c, "flat vector length mismatch");
        LinearMap {
            domain,
            codomain,
            matrix: Matrix::from_fn(field, r, c, |i, j| v[i * c + j].clone()),
        }
    }
}

impl fmt::Debug for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearMap {} -> {}: {:?}", self.domain.dim(), self.codomain.dim(), self.matrix)
    }
}

impl Mul for &LinearMap {
    type Output = LinearMap;
    /// Composition; panics on a dimension mismatch.
    fn mul(self, rhs: &LinearMap) -> LinearMap {
        self.try_compose(rhs).expect("composition shape")
    }
}

impl Add for &LinearMap {
    type Output = LinearMap;
    fn add(self, rhs: &LinearMap) -> LinearMap {
        self.try_add(rhs).expect("sum shape")
    }
}

impl Sub for &LinearMap {
    type Output = LinearMap;
    fn sub(self, rhs: &LinearMap) -> LinearMap {
        self.try_sub(rhs).expect("difference shape")
    }
}

impl Neg for &LinearMap {
    type Output = LinearMap;
    fn neg(self) -> LinearMap {
        LinearMap {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: self.matrix.neg(),
        }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for LinearMap {
            type Output = LinearMap;
            fn $m(self, rhs: LinearMap) -> LinearMap {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LinearMap> for LinearMap {
            type Output = LinearMap;
            fn $m(self, rhs: &LinearMap) -> LinearMap {
                (&self).$m(rhs)
            }
        }
        impl $tr<LinearMap> for &LinearMap {
            type Output = LinearMap;
            fn $m(self, rhs: LinearMap) -> LinearMap {
                self.$m(&rhs)
            }
        }
    };
}
owned_ops!(Mul, mul);
owned_ops!(Add, add);
owned_ops!(Sub, sub);

impl Neg for LinearMap {
    type Output = LinearMap;
    fn neg(self) -> LinearMap {
        -&self
    }
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &LinearMap, b: &LinearMap) -> LinearMap {
    LinearMap {
        domain: a.domain.concat(&b.domain),
        codomain: a.codomain.concat(&b.codomain),
        matrix: a.matrix.kron(&b.matrix),
    }
}

/// Fallible `kron` that reports a field mismatch instead of panicking.
pub fn try_kron(a: &LinearMap, b: &LinearMap) -> Result<LinearMap> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch(a.field(), b.field()));
    }
    Ok(kron(a, b))
}

/// Kronecker product of a list of maps, left to right.
pub fn kron_all(field: FieldSpec, maps: &[&LinearMap]) -> LinearMap {
    maps.iter().fold(LinearMap::identity(field, Signature::ground()), |acc, m| {
        kron(&acc, m)
    })
}

/// `τ: V ⊗ W -> W ⊗ V`.
pub fn flip(field: FieldSpec, v: &Space, w: &Space) -> LinearMap {
    let (dv, dw) = (v.dim(), w.dim());
    let mut m = Matrix::zeros(field, dv * dw, dv * dw);
    for i in 0..dv {
        for j in 0..dw {
            m.set(j * dv + i, i * dw + j, field.one());
        }
    }
    LinearMap {
        domain: Signature::new(vec![v.clone(), w.clone()]),
        codomain: Signature::new(vec![w.clone(), v.clone()]),
        matrix: m,
    }
}

/// Base-`d` digits of `index`, most significant first, `n` of them.
pub fn digits(mut index: usize, d: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for slot in (0..n).rev() {
        out[slot] = index % d;
        index /= d;
    }
    out
}

pub fn undigits(digits: &[usize], d: usize) -> usize {
    digits.iter().fold(0, |acc, &x| acc * d + x)
}

/// Sign of a permutation given in one-line notation.
pub fn sign(sigma: &[usize]) -> i64 {
    let mut inversions = 0;
    for i in 0..sigma.len() {
        for j in i + 1..sigma.len() {
            if sigma[i] > sigma[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `ψ_σ` on `⊗ⁿC`: the content of slot `j` moves to slot `sigma[j]`.
pub fn perm_action(field: FieldSpec, sigma: &[usize], c: &Space) -> LinearMap {
    let n = sigma.len();
    let d = c.dim();
    let total = d.pow(n as u32);
    let mut m = Matrix::zeros(field, total, total);
    let mut out = vec![0; n];
    for idx in 0..total {
        let dig = digits(idx, d, n);
        for j in 0..n {
            out[sigma[j]] = dig[j];
        }
        m.set(undigits(&out, d), idx, field.one());
    }
    let sig = Signature::power(c, n);
    LinearMap {
        domain: sig.clone(),
        codomain: sig,
        matrix: m,
    }
}

/// The antisymmetrizer `(1/n!) Σ sgn(σ) ψ_σ` on `⊗ⁿC`.
pub fn alt(field: FieldSpec, n: usize, c: &Space) -> Result<LinearMap> {
    if !field.factorial_invertible(n) {
        return Err(Error::NonInvertibleFactorial {
            n,
            p: field.characteristic(),
        });
    }
    let d = c.dim();
    let total = d.pow(n as u32);
    let factorial: i64 = (1..=n as i64).product();
    let plus = field.fraction(1, factorial)?;
    let minus = -&plus;
    let perms: Vec<(Vec<usize>, i64)> = (0..n)
        .permutations(n)
        .map(|p| {
            let s = sign(&p);
            (p, s)
        })
        .collect();
    let mut m = Matrix::zeros(field, total, total);
    let mut out = vec![0; n];
    for idx in 0..total {
        let dig = digits(idx, d, n);
        for (p, s) in &perms {
            for j in 0..n {
                out[p[j]] = dig[j];
            }
            m.add_at(undigits(&out, d), idx, if *s > 0 { &plus } else { &minus });
        }
    }
    let sig = Signature::power(c, n);
    Ok(LinearMap {
        domain: sig.clone(),
        codomain: sig,
        matrix: m,
    })
}
