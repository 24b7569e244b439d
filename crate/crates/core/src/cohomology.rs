//! Cochain complexes of a comodule over a Rota-Baxter Lie coalgebra.
//!
//! An `n`-cochain is a map `M -> ⊗ⁿC` whose image is alternating. Values are
//! stored in the full tensor power; dimension counts use the wedge basis
//! (one cochain per increasing index tuple and basis vector of `M`).

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use itertools::Itertools;

use crate::coalgebra::weighted_sum;
use crate::comodule::RBComodule;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{FieldSpec, Scalar};
use crate::tensor::{alt, kron, kron_all, perm_action, sign, LinearMap, Signature, Space};

/// Default highest degree for which cohomology is computed.
pub const N_MAX: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Complex {
    Plain,
    Tilde,
    Rb,
    RbReduced,
}

impl Complex {
    pub fn name(self) -> &'static str {
        match self {
            Complex::Plain => "plain",
            Complex::Tilde => "tilde",
            Complex::Rb => "rb",
            Complex::RbReduced => "rb-reduced",
        }
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Complex {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(Complex::Plain),
            "tilde" => Ok(Complex::Tilde),
            "rb" => Ok(Complex::Rb),
            "rb-reduced" | "reduced" => Ok(Complex::RbReduced),
            _ => Err(Error::Parse(format!("unknown complex {s:?}"))),
        }
    }
}

/// A cochain of degree `n`: a map `M -> ⊗ⁿC`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub degree: usize,
    pub map: LinearMap,
}

impl Cochain {
    pub fn flat(&self) -> Vec<Scalar> {
        self.map.to_vec()
    }
}

/// An element of `Cⁿ ⊕ C̃ⁿ⁻¹`; `second` is absent in degree 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RBCochain {
    pub degree: usize,
    pub first: Cochain,
    pub second: Option<Cochain>,
}

impl RBCochain {
    pub fn flat(&self) -> Vec<Scalar> {
        let mut v = self.first.flat();
        if let Some(s) = &self.second {
            v.extend(s.flat());
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.first.map.is_zero() && self.second.as_ref().is_none_or(|s| s.map.is_zero())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyReport {
    pub n: usize,
    pub complex: Complex,
    pub dim_cochains: usize,
    pub dim_z: usize,
    pub dim_b: usize,
    pub dim_h: usize,
}

/// Exactness verdict at one node of the long exact sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LesNode {
    pub label: String,
    pub image_in_kernel: bool,
    pub dim_image: usize,
    pub dim_kernel: usize,
}

impl LesNode {
    pub fn exact(&self) -> bool {
        self.image_in_kernel && self.dim_image == self.dim_kernel
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LesReport {
    pub nodes: Vec<LesNode>,
}

impl LesReport {
    pub fn exact(&self) -> bool {
        self.nodes.iter().all(LesNode::exact)
    }

    pub fn first_failure(&self) -> Option<&LesNode> {
        self.nodes.iter().find(|n| !n.exact())
    }
}

/// Subspaces of one cochain space, in flattened coordinates.
struct Stage {
    ambient: usize,
    z: Matrix,
    b: Matrix,
}

/// Coboundary operators for one comodule. Antisymmetrizers are built lazily
/// and cached per degree.
pub struct CohomologyEngine {
    com: RBComodule,
    delta_tilde: LinearMap,
    alts: Vec<OnceLock<Result<LinearMap>>>,
}

impl CohomologyEngine {
    pub fn new(com: &RBComodule) -> Self {
        Self::with_max_degree(com, N_MAX)
    }

    /// Engine able to compute up to degree `n_max` (needs `Alt` up to
    /// `n_max + 2` for the next coboundary).
    pub fn with_max_degree(com: &RBComodule, n_max: usize) -> Self {
        let base = com.base();
        let delta_tilde = &weighted_sum(base.r(), base.r(), base.lambda()) * base.delta();
        CohomologyEngine {
            com: com.clone(),
            delta_tilde,
            alts: (0..n_max + 3).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn comodule(&self) -> &RBComodule {
        &self.com
    }

    fn field(&self) -> FieldSpec {
        self.com.field()
    }

    fn c(&self) -> &Space {
        self.com.base().space()
    }

    fn d(&self) -> usize {
        self.c().dim()
    }

    fn dm(&self) -> usize {
        self.com.dim()
    }

    fn alt(&self, n: usize) -> Result<&LinearMap> {
        let slot = self
            .alts
            .get(n)
            .ok_or(Error::OutOfRange { index: n, n: self.alts.len() - 1 })?;
        slot.get_or_init(|| alt(self.field(), n, self.c()))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Characteristic guard for the coboundary leaving degree `n`.
    pub fn guard(&self, n: usize) -> Result<()> {
        let p = self.field().characteristic();
        if p == 0 || (p != 2 && p as usize > n + 1) {
            Ok(())
        } else {
            Err(Error::CharacteristicGuard {
                degree: n,
                needed: n + 1,
                characteristic: p,
            })
        }
    }

    fn half(&self) -> Scalar {
        self.field().fraction(1, 2).expect("characteristic is not 2")
    }

    fn identity_power(&self, n: usize) -> LinearMap {
        LinearMap::identity(self.field(), Signature::power(self.c(), n))
    }

    fn cochain_sig(&self, n: usize) -> (Signature, Signature) {
        ((self.com.space()).into(), Signature::power(self.c(), n))
    }

    pub fn zero_cochain(&self, n: usize) -> Cochain {
        let (dom, cod) = self.cochain_sig(n);
        Cochain {
            degree: n,
            map: LinearMap::zero(self.field(), dom, cod),
        }
    }

    /// Wraps a map `M -> ⊗ⁿC` after checking its shape.
    pub fn cochain(&self, n: usize, map: LinearMap) -> Result<Cochain> {
        let (dom, cod) = self.cochain_sig(n);
        if map.domain().dim() != dom.dim() || map.codomain().dim() != cod.dim() {
            return Err(Error::ShapeMismatch(format!("not a cochain of degree {n}")));
        }
        Ok(Cochain {
            degree: n,
            map: map.with_signatures(dom, cod)?,
        })
    }

    pub fn cochain_from_flat(&self, n: usize, v: &[Scalar]) -> Cochain {
        let (dom, cod) = self.cochain_sig(n);
        Cochain {
            degree: n,
            map: LinearMap::from_vec(dom, cod, self.field(), v),
        }
    }

    fn flat_len(&self, n: usize) -> usize {
        self.d().pow(n as u32) * self.dm()
    }

    /// `I^{⊗(k−1)} ⊗ δ ⊗ I^{⊗(n−k)}` for `1 ≤ k ≤ n`.
    pub fn insert(&self, delta: &LinearMap, k: usize, n: usize) -> Result<LinearMap> {
        if k == 0 || k > n {
            return Err(Error::OutOfRange { index: k, n });
        }
        Ok(kron_all(
            self.field(),
            &[&self.identity_power(k - 1), delta, &self.identity_power(n - k)],
        ))
    }

    /// Insertion of `Δ_C` at position `k` of `⊗ⁿC`.
    pub fn insert_delta(&self, k: usize, n: usize) -> Result<LinearMap> {
        self.insert(self.com.base().delta(), k, n)
    }

    /// Is `alt ∘ h = h`?
    pub fn is_alternating(&self, h: &Cochain) -> Result<bool> {
        if h.degree <= 1 {
            return Ok(true);
        }
        Ok(self.alt(h.degree)? * &h.map == h.map)
    }

    fn coboundary_with(
        &self,
        h: &Cochain,
        delta: &LinearMap,
        coaction: impl Fn(&LinearMap) -> LinearMap,
    ) -> Result<Cochain> {
        let n = h.degree;
        if n == 0 {
            return self.cochain(1, coaction(&h.map));
        }
        self.guard(n)?;
        let f = self.field();
        let mut sum = LinearMap::zero(f, self.com.space(), Signature::power(self.c(), n + 1));
        for k in 1..=n {
            let term = &self.insert(delta, k, n)? * &h.map;
            sum = if k % 2 == 0 { &sum + &term } else { &sum - &term };
        }
        let tail = coaction(&h.map);
        let tail = if n % 2 == 1 { tail } else { -tail };
        let inner = &sum.scale(&self.half()) + &tail;
        self.cochain(n + 1, self.alt(n + 1)? * &inner)
    }

    fn plain_coaction(&self, h: &LinearMap) -> LinearMap {
        let ic = LinearMap::identity(self.field(), self.c());
        &kron(h, &ic) * self.com.rho()
    }

    fn tilde_coaction(&self, h: &LinearMap) -> LinearMap {
        let f = self.field();
        let ic = LinearMap::identity(f, self.c());
        let rho = self.com.rho();
        &(&kron(h, self.com.base().r()) * rho) - &(&(&kron(h, &ic) * rho) * self.com.r_m())
    }

    /// `∂ⁿ`.
    pub fn d_plain(&self, h: &Cochain) -> Result<Cochain> {
        self.coboundary_with(h, self.com.base().delta(), |m| self.plain_coaction(m))
    }

    /// `∂̃ⁿ`, built from `(I ⊗ R + R ⊗ I + λ)Δ` and the `R`-twisted coaction.
    pub fn d_tilde(&self, h: &Cochain) -> Result<Cochain> {
        self.coboundary_with(h, &self.delta_tilde, |m| self.tilde_coaction(m))
    }

    /// Sum of `R` placed on exactly `i` of the `n` tensor factors.
    pub fn r_placements(&self, i: usize, n: usize) -> LinearMap {
        let f = self.field();
        let r = self.com.base().r();
        let id = LinearMap::identity(f, self.c());
        let mut total = LinearMap::zero(f, Signature::power(self.c(), n), Signature::power(self.c(), n));
        for subset in (0..n).combinations(i) {
            let factors: Vec<&LinearMap> = (0..n)
                .map(|j| if subset.contains(&j) { r } else { &id })
                .collect();
            total = &total + &kron_all(f, &factors);
        }
        total
    }

    /// `δⁿ h = R^{⊗n}h − Σ_{i<n} λ^{n−i−1} R^{(i)_n} h R_M`, `δ⁰ = id`.
    pub fn chain_delta(&self, h: &Cochain) -> Result<Cochain> {
        let n = h.degree;
        if n == 0 {
            return Ok(h.clone());
        }
        let lambda = self.com.base().lambda();
        let mut out = &self.r_placements(n, n) * &h.map;
        let hr = &h.map * self.com.r_m();
        for i in 0..n {
            let term = (&self.r_placements(i, n) * &hr).scale(&lambda.pow((n - i - 1) as u32));
            out = &out - &term;
        }
        self.cochain(n, out)
    }

    /// `∂⁰_RB(m*) = (∂⁰m*, −½m*)`, `∂ⁿ_RB(f, g) = (∂ⁿf, −∂̃ⁿ⁻¹g − ½δⁿf)`.
    pub fn d_rb(&self, x: &RBCochain) -> Result<RBCochain> {
        let n = x.degree;
        let half = self.half();
        let first = self.d_plain(&x.first)?;
        let delta_f = self.chain_delta(&x.first)?;
        let mut second = delta_f.map.scale(&-&half);
        if let Some(g) = &x.second {
            second = &second - &self.d_tilde(g)?.map;
        }
        Ok(RBCochain {
            degree: n + 1,
            first,
            second: Some(self.cochain(n, second)?),
        })
    }

    pub fn rb_cochain(&self, first: Cochain, second: Option<Cochain>) -> Result<RBCochain> {
        let n = first.degree;
        match (&second, n) {
            (None, 0) => {}
            (Some(s), n) if n > 0 && s.degree == n - 1 => {}
            _ => return Err(Error::ShapeMismatch("RB cochain components have wrong degrees".into())),
        }
        Ok(RBCochain {
            degree: n,
            first,
            second,
        })
    }

    /// Wedge basis of `⊗ⁿC`: `Σ_σ sgn(σ) e_{i_σ}` per increasing tuple.
    fn wedge_basis(&self, n: usize) -> Vec<Vec<Scalar>> {
        let f = self.field();
        let d = self.d();
        if n == 0 {
            return vec![vec![f.one()]];
        }
        let total = d.pow(n as u32);
        (0..d)
            .combinations(n)
            .map(|tuple| {
                let mut v = vec![f.zero(); total];
                for p in (0..n).permutations(n) {
                    let idx = p.iter().fold(0, |acc, &j| acc * d + tuple[j]);
                    v[idx] = f.from_i64(sign(&p));
                }
                v
            })
            .collect()
    }

    /// Basis of `Cⁿ(M, C)`.
    pub fn cochain_basis(&self, n: usize) -> Vec<Cochain> {
        let f = self.field();
        let dm = self.dm();
        let wedges = self.wedge_basis(n);
        let rows = self.d().pow(n as u32);
        let mut out = Vec::with_capacity(wedges.len() * dm);
        for w in &wedges {
            for j in 0..dm {
                let mut v = vec![f.zero(); rows * dm];
                for (i, x) in w.iter().enumerate() {
                    v[i * dm + j] = x.clone();
                }
                out.push(self.cochain_from_flat(n, &v));
            }
        }
        out
    }

    /// Basis of `Cⁿ_RB`; with `reduced`, degree 1 drops the `M*` summand.
    pub fn rb_basis(&self, n: usize, reduced: bool) -> Vec<RBCochain> {
        let firsts = self.cochain_basis(n);
        if n == 0 {
            return firsts
                .into_iter()
                .map(|first| RBCochain { degree: 0, first, second: None })
                .collect();
        }
        let zero_second = self.zero_cochain(n - 1);
        let mut out: Vec<RBCochain> = firsts
            .into_iter()
            .map(|first| RBCochain {
                degree: n,
                first,
                second: Some(zero_second.clone()),
            })
            .collect();
        if !(reduced && n == 1) {
            let zero_first = self.zero_cochain(n);
            for s in self.cochain_basis(n - 1) {
                out.push(RBCochain {
                    degree: n,
                    first: zero_first.clone(),
                    second: Some(s),
                });
            }
        }
        out
    }

    fn rb_flat_len(&self, n: usize) -> usize {
        self.flat_len(n) + if n > 0 { self.flat_len(n - 1) } else { 0 }
    }

    /// Columns: flattened basis cochains of degree `n`.
    fn basis_matrix(&self, complex: Complex, n: usize) -> Matrix {
        let f = self.field();
        match complex {
            Complex::Plain | Complex::Tilde => {
                let cols: Vec<_> = self.cochain_basis(n).iter().map(Cochain::flat).collect();
                Matrix::from_columns(f, self.flat_len(n), &cols)
            }
            Complex::Rb | Complex::RbReduced => {
                let cols: Vec<_> = self
                    .rb_basis(n, complex == Complex::RbReduced)
                    .iter()
                    .map(RBCochain::flat)
                    .collect();
                Matrix::from_columns(f, self.rb_flat_len(n), &cols)
            }
        }
    }

    /// Columns: flattened coboundaries of the degree-`n` basis cochains.
    pub fn coboundary_matrix(&self, complex: Complex, n: usize) -> Result<Matrix> {
        let f = self.field();
        self.guard(n)?;
        let cols: Vec<Vec<Scalar>> = match complex {
            Complex::Plain => self
                .cochain_basis(n)
                .iter()
                .map(|h| self.d_plain(h).map(|c| c.flat()))
                .collect::<Result<_>>()?,
            Complex::Tilde => self
                .cochain_basis(n)
                .iter()
                .map(|h| self.d_tilde(h).map(|c| c.flat()))
                .collect::<Result<_>>()?,
            Complex::Rb | Complex::RbReduced => self
                .rb_basis(n, complex == Complex::RbReduced)
                .iter()
                .map(|x| self.d_rb(x).map(|c| c.flat()))
                .collect::<Result<_>>()?,
        };
        let rows = match complex {
            Complex::Plain | Complex::Tilde => self.flat_len(n + 1),
            _ => self.rb_flat_len(n + 1),
        };
        Ok(Matrix::from_columns(f, rows, &cols))
    }

    /// Dimensions of `Zⁿ`, `Bⁿ` and `Hⁿ` for the chosen complex.
    pub fn cohomology(&self, complex: Complex, n: usize) -> Result<CohomologyReport> {
        self.guard(n)?;
        let d_n = self.coboundary_matrix(complex, n)?;
        let dim_cochains = d_n.cols();
        let dim_z = dim_cochains - d_n.rank();
        let dim_b = if n == 0 {
            0
        } else {
            let prev = self.coboundary_matrix(complex, n - 1)?;
            let rank = prev.rank();
            if complex == Complex::RbReduced && n == 1 {
                // only the part of the image lying inside C¹ ⊕ 0 counts
                let start = self.flat_len(1);
                let projected = prev.block(start, prev.rows(), 0, prev.cols());
                rank - projected.rank()
            } else {
                rank
            }
        };
        Ok(CohomologyReport {
            n,
            complex,
            dim_cochains,
            dim_z,
            dim_b,
            dim_h: dim_z - dim_b,
        })
    }

    /// Membership in the reduced second cocycles via the two explicit
    /// vanishing conditions, written without antisymmetrizers.
    pub fn reduced_z2_membership(&self, f: &Cochain, g: &Cochain) -> Result<bool> {
        if f.degree != 2 || g.degree != 1 {
            return Err(Error::ShapeMismatch("expected degrees 2 and 1".into()));
        }
        let field = self.field();
        let base = self.com.base();
        let c = self.c();
        let (delta, r, lambda) = (base.delta(), base.r(), base.lambda());
        let rho = self.com.rho();
        let r_m = self.com.r_m();
        let ic = LinearMap::identity(field, c);
        let tau = base.tau();
        let tau_mc = crate::tensor::flip(field, self.com.space(), c);
        let twist = kron(&ic, &tau);
        let h = &f.map;
        let first = &(&(&(&(&kron(&ic, delta) * h) + &(&(&twist * &kron(delta, &ic)) * h))
            + &(&(&twist * &kron(h, &ic)) * rho))
            - &(&(&kron(&ic, h) * &tau_mc) * rho))
            - &(&(&kron(delta, &ic) * h) + &(&kron(h, &ic) * rho));
        let g = &g.map;
        let w = weighted_sum(r, r, lambda);
        let g_rho_rm = &(&kron(g, &ic) * rho) * r_m;
        let g_r_rho = &kron(g, r) * rho;
        let second = &(&(&(&(&(&g_rho_rm - &(&tau * &g_rho_rm)) + &(&(&w * delta) * g)) - &g_r_rho)
            + &(&tau * &g_r_rho))
            - &(&kron(r, r) * h))
            + &(&(&w * h) * r_m);
        Ok(first.is_zero() && second.is_zero())
    }

    fn stage(&self, complex: Complex, n: usize) -> Result<Stage> {
        let basis = self.basis_matrix(complex, n);
        let d_n = self.coboundary_matrix(complex, n)?;
        let kernel = d_n.kernel_basis();
        let k = Matrix::from_columns(self.field(), d_n.cols(), &kernel);
        let z = basis.try_mul(&k)?;
        let b = if n == 0 {
            Matrix::zeros(self.field(), basis.rows(), 0)
        } else {
            self.coboundary_matrix(complex, n - 1)?
        };
        Ok(Stage {
            ambient: basis.rows(),
            z,
            b,
        })
    }

    fn map_columns(&self, m: &Matrix, rows: usize, f: impl Fn(&[Scalar]) -> Result<Vec<Scalar>>) -> Result<Matrix> {
        let cols: Vec<Vec<Scalar>> = m.columns().iter().map(|c| f(c)).collect::<Result<_>>()?;
        Ok(Matrix::from_columns(self.field(), rows, &cols))
    }

    /// `[i]: g ↦ (0, g)` from `C̃ⁿ⁻¹` into `Cⁿ_RB`.
    fn inclusion(&self, n: usize, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field().zero(); self.flat_len(n)];
        out.extend_from_slice(v);
        out
    }

    /// `[p]: (f, g) ↦ f`.
    fn projection(&self, n: usize, v: &[Scalar]) -> Vec<Scalar> {
        v[..self.flat_len(n)].to_vec()
    }

    /// `−½δⁿ` from `Cⁿ` to `C̃ⁿ`.
    fn connecting(&self, n: usize, v: &[Scalar]) -> Result<Vec<Scalar>> {
        let h = self.cochain_from_flat(n, v);
        Ok(self.chain_delta(&h)?.map.scale(&-&self.half()).to_vec())
    }

    /// Verifies exactness of
    /// `H̃ⁿ⁻¹ → Hⁿ_RB → Hⁿ → H̃ⁿ → Hⁿ⁺¹_RB` for `0 ≤ n ≤ n_max`.
    pub fn long_exact_sequence_check(&self, n_max: usize) -> Result<LesReport> {
        let f = self.field();
        let mut nodes = Vec::new();
        for n in 0..=n_max {
            let rb = self.stage(Complex::Rb, n)?;
            let plain = self.stage(Complex::Plain, n)?;
            let tilde = self.stage(Complex::Tilde, n)?;
            let b_rb_next = self.coboundary_matrix(Complex::Rb, n)?;

            // node Hⁿ_RB: [i] from H̃ⁿ⁻¹, then [p]
            let i_z = if n == 0 {
                Matrix::zeros(f, rb.ambient, 0)
            } else {
                let prev = self.stage(Complex::Tilde, n - 1)?;
                self.map_columns(&prev.z, rb.ambient, |v| Ok(self.inclusion(n, v)))?
            };
            let p = |v: &[Scalar]| Ok(self.projection(n, v));
            nodes.push(exactness(
                format!("H^{n}_RB"),
                &i_z,
                &rb,
                &self.map_columns(&i_z, plain.ambient, p)?,
                &self.map_columns(&rb.z, plain.ambient, p)?,
                &plain.b,
            ));

            // node Hⁿ: [p], then [−½δⁿ]
            let p_z = self.map_columns(&rb.z, plain.ambient, p)?;
            let conn = |v: &[Scalar]| self.connecting(n, v);
            nodes.push(exactness(
                format!("H^{n}"),
                &p_z,
                &plain,
                &self.map_columns(&p_z, tilde.ambient, conn)?,
                &self.map_columns(&plain.z, tilde.ambient, conn)?,
                &tilde.b,
            ));

            // node H̃ⁿ: [−½δⁿ], then [i] into Hⁿ⁺¹_RB
            let c_z = self.map_columns(&plain.z, tilde.ambient, conn)?;
            let next_ambient = self.rb_flat_len(n + 1);
            let incl = |v: &[Scalar]| Ok(self.inclusion(n + 1, v));
            nodes.push(exactness(
                format!("H~^{n}"),
                &c_z,
                &tilde,
                &self.map_columns(&c_z, next_ambient, incl)?,
                &self.map_columns(&tilde.z, next_ambient, incl)?,
                &b_rb_next,
            ));
        }
        Ok(LesReport { nodes })
    }

    /// `Alt` on `⊗ⁿC`, exposed for property tests.
    pub fn alternator(&self, n: usize) -> Result<LinearMap> {
        self.alt(n).cloned()
    }

    /// `ψ_σ` on `⊗ⁿC`.
    pub fn permutation(&self, sigma: &[usize]) -> LinearMap {
        perm_action(self.field(), sigma, self.c())
    }
}

/// Exactness at `X` for `A --F--> X --G--> Y`, given `F(Z_A)`, the stage of
/// `X`, `G(F(Z_A))`, `G(Z_X)` and a spanning set of `B_Y`.
fn exactness(label: String, fz_a: &Matrix, x: &Stage, gfz_a: &Matrix, gz_x: &Matrix, b_y: &Matrix) -> LesNode {
    let rank_by = b_y.rank();
    let image_in_kernel = b_y.hstack(gfz_a).rank() == rank_by;
    let rank_bx = x.b.rank();
    let dim_image = x.b.hstack(fz_a).rank() - rank_bx;
    let dim_h = x.z.rank() - rank_bx;
    let dim_g_image = b_y.hstack(gz_x).rank() - rank_by;
    LesNode {
        label,
        image_in_kernel,
        dim_image,
        dim_kernel: dim_h - dim_g_image,
    }
}
