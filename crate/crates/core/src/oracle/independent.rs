//! Second implementations built on different algorithms: fraction-free
//! elimination and minor expansion for rank, per-basis-vector expansion of
//! structure constants for the cocycle and coalgebra axioms, and a
//! union-find orbit count for classification.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::coalgebra::RBLieCoalgebra;
use crate::error::{Error, Result};
use crate::extension::{triple_from_params, triple_parameters, vector_at, NonAbelianCocycle};
use crate::matrix::Matrix;
use crate::scalar::{FieldSpec, Scalar};
use crate::solve::point_count;
use crate::tensor::LinearMap;

/// Rank by fraction-free Bareiss elimination. Rational rows are first
/// cleared of denominators; prime-field entries are reduced with `u64`
/// arithmetic.
pub fn bareiss_rank(m: &Matrix) -> usize {
    match m.field() {
        FieldSpec::Rationals => bareiss_integer(integer_rows(m)),
        FieldSpec::Prime(p) => bareiss_modular(m, p as u64),
    }
}

pub fn independent_rank(m: &Matrix) -> usize {
    bareiss_rank(m)
}

fn integer_rows(m: &Matrix) -> Vec<Vec<BigInt>> {
    (0..m.rows())
        .map(|i| {
            let row: Vec<_> = m.row(i).iter().map(|s| s.as_rational().expect("rational entry").clone()).collect();
            let l = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            row.iter().map(|q| q.numer() * (&l / q.denom())).collect()
        })
        .collect()
}

fn bareiss_integer(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

fn bareiss_modular(m: &Matrix, p: u64) -> usize {
    let mut a: Vec<Vec<u64>> = (0..m.rows())
        .map(|i| m.row(i).iter().map(|s| s.residue().expect("prime entry") as u64).collect())
        .collect();
    let (rows, cols) = (m.rows(), m.cols());
    let inv = |x: u64| mod_pow(x, p - 2, p);
    let mut prev = 1u64;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let pi = inv(prev);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (a[r][c] * a[i][j] % p + p - a[i][c] * a[r][j] % p) % p;
                a[i][j] = v * pi % p;
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        r += 1;
    }
    r
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Rank as the size of the largest non-vanishing minor, with determinants
/// by cofactor expansion. Exponential; for small matrices only.
pub fn minors_rank(m: &Matrix) -> usize {
    let (rows, cols) = (m.rows(), m.cols());
    for k in (1..=rows.min(cols)).rev() {
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                if !cofactor_det(m, &rs, &cs).is_zero() {
                    return k;
                }
            }
        }
    }
    0
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn cofactor_det(m: &Matrix, rows: &[usize], cols: &[usize]) -> Scalar {
    let f = m.field();
    if rows.len() == 1 {
        return m.get(rows[0], cols[0]).clone();
    }
    let mut acc = f.zero();
    for (k, &c) in cols.iter().enumerate() {
        let a = m.get(rows[0], c);
        if a.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = a * &cofactor_det(m, &rows[1..], &rest);
        acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Structure constants of a coalgebra: `d[i][j][k]` is the `e_i⊗e_j`
/// coefficient of `Δ(e_k)`, `r[i][k]` the `e_i` coefficient of `R(e_k)`.
struct Constants {
    n: usize,
    d: Vec<Scalar>,
    r: Vec<Scalar>,
    lambda: Scalar,
    field: FieldSpec,
}

impl Constants {
    fn d(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.d[(i * self.n + j) * self.n + k]
    }

    fn r(&self, i: usize, k: usize) -> &Scalar {
        &self.r[i * self.n + k]
    }

    fn from_coalgebra(c: &RBLieCoalgebra) -> Self {
        let n = c.dim();
        let f = c.field();
        let mut d = vec![f.zero(); n * n * n];
        let mut r = vec![f.zero(); n * n];
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    d[(i * n + j) * n + k] = c.delta().matrix().get(i * n + j, k).clone();
                }
                r[i * n + k] = c.r().matrix().get(i, k).clone();
            }
        }
        Constants { n, d, r, lambda: c.lambda().clone(), field: f }
    }

    /// The semidirect structure assembled entry by entry from the triple;
    /// basis `C` first, then `M`.
    fn semidirect(z: &NonAbelianCocycle) -> Self {
        let f = z.field();
        let (dc, dm) = (z.c().dim(), z.m().dim());
        let n = dc + dm;
        let mut d = vec![f.zero(); n * n * n];
        let mut r = vec![f.zero(); n * n];
        let idx = |i: usize, j: usize, k: usize| (i * n + j) * n + k;
        let (dcm, rc) = (z.c().delta().matrix(), z.c().r().matrix());
        let (dmm, rm) = (z.m().delta().matrix(), z.m().r().matrix());
        let (h, rho, phi) = (z.h().matrix(), z.rho().matrix(), z.phi().matrix());
        for k in 0..dc {
            for a in 0..dc {
                for b in 0..dc {
                    d[idx(a, b, k)] = dcm.get(a * dc + b, k).clone();
                }
                r[a * n + k] = rc.get(a, k).clone();
            }
        }
        for m in 0..dm {
            let k = dc + m;
            for a in 0..dc {
                for b in 0..dc {
                    d[idx(a, b, k)] = h.get(a * dc + b, m).clone();
                }
                r[a * n + k] = phi.get(a, m).clone();
            }
            for p in 0..dm {
                for q in 0..dm {
                    d[idx(dc + p, dc + q, k)] = dmm.get(p * dm + q, m).clone();
                }
                r[(dc + p) * n + k] = rm.get(p, m).clone();
                for b in 0..dc {
                    let v = rho.get(p * dc + b, m);
                    d[idx(dc + p, b, k)] = &d[idx(dc + p, b, k)] + v;
                    d[idx(b, dc + p, k)] = &d[idx(b, dc + p, k)] - v;
                }
            }
        }
        Constants { n, d, r, lambda: z.c().lambda().clone(), field: f }
    }

    fn antisymmetric(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| (self.d(i, j, k) + self.d(j, i, k)).is_zero())))
    }

    /// Coefficient of `e_i⊗e_j⊗e_l` in the co-Jacobi expression applied to `e_k`.
    fn cojacobi(&self) -> bool {
        let n = self.n;
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    for l in 0..n {
                        let mut acc = self.field.zero();
                        for p in 0..n {
                            acc = &acc + &(self.d(i, p, k) * self.d(j, l, p));
                            acc = &acc - &(self.d(p, l, k) * self.d(i, j, p));
                            acc = &acc + &(self.d(p, j, k) * self.d(i, l, p));
                        }
                        if !acc.is_zero() {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn rota_baxter(&self) -> bool {
        let n = self.n;
        for k in 0..n {
            // Δ(R e_k)
            let mut dr = vec![self.field.zero(); n * n];
            for a in 0..n {
                for b in 0..n {
                    for p in 0..n {
                        dr[a * n + b] = &dr[a * n + b] + &(self.r(p, k) * self.d(a, b, p));
                    }
                }
            }
            for i in 0..n {
                for j in 0..n {
                    let mut lhs = self.field.zero();
                    for a in 0..n {
                        for b in 0..n {
                            lhs = &lhs + &(&(self.r(i, a) * self.r(j, b)) * self.d(a, b, k));
                        }
                    }
                    let mut rhs = &self.lambda * &dr[i * n + j];
                    for b in 0..n {
                        rhs = &rhs + &(self.r(j, b) * &dr[i * n + b]);
                    }
                    for a in 0..n {
                        rhs = &rhs + &(self.r(i, a) * &dr[a * n + j]);
                    }
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn valid(&self) -> bool {
        self.antisymmetric() && self.cojacobi() && self.rota_baxter()
    }
}

/// Coalgebra axioms by explicit expansion over structure constants.
pub fn independent_coalgebra_check(c: &RBLieCoalgebra) -> bool {
    Constants::from_coalgebra(c).valid()
}

/// A triple is a cocycle exactly when its semidirect structure satisfies
/// the coalgebra axioms; here that structure is expanded by hand.
pub fn independent_cocycle_check(z: &NonAbelianCocycle) -> bool {
    Constants::semidirect(z).valid()
}

/// Forward image of `z` under `φ`, entry by entry.
fn act_entries(z: &NonAbelianCocycle, v: &[Scalar]) -> Vec<Scalar> {
    let f = z.field();
    let (dc, dm) = (z.c().dim(), z.m().dim());
    let vv = |a: usize, m: usize| &v[a * dm + m];
    let (dcm, rc) = (z.c().delta().matrix(), z.c().r().matrix());
    let (dmm, rm) = (z.m().delta().matrix(), z.m().r().matrix());
    let (h, rho, phi) = (z.h().matrix(), z.rho().matrix(), z.phi().matrix());
    let mut out = Vec::with_capacity(triple_parameters(dc, dm));
    // h' = h + (φ⊗I)ρ − τ(φ⊗I)ρ + (φ⊗φ)Δ_M − Δ_Cφ
    let x = |a: usize, b: usize, m: usize| -> Scalar {
        let mut acc = f.zero();
        for n in 0..dm {
            acc = &acc + &(vv(a, n) * rho.get(n * dc + b, m));
        }
        acc
    };
    for a in 0..dc {
        for b in 0..dc {
            for m in 0..dm {
                let mut e = h.get(a * dc + b, m) + &(&x(a, b, m) - &x(b, a, m));
                for n in 0..dm {
                    for q in 0..dm {
                        e = &e + &(&(vv(a, n) * vv(b, q)) * dmm.get(n * dm + q, m));
                    }
                }
                for c in 0..dc {
                    e = &e - &(dcm.get(a * dc + b, c) * vv(c, m));
                }
                out.push(e);
            }
        }
    }
    // ρ' = ρ + (I⊗φ)Δ_M
    for n in 0..dm {
        for b in 0..dc {
            for m in 0..dm {
                let mut e = rho.get(n * dc + b, m).clone();
                for q in 0..dm {
                    e = &e + &(vv(b, q) * dmm.get(n * dm + q, m));
                }
                out.push(e);
            }
        }
    }
    // φ' = φ + φR_M − R_Cφ
    for a in 0..dc {
        for m in 0..dm {
            let mut e = phi.get(a, m).clone();
            for q in 0..dm {
                e = &e + &(vv(a, q) * rm.get(q, m));
            }
            for c in 0..dc {
                e = &e - &(rc.get(a, c) * vv(c, m));
            }
            out.push(e);
        }
    }
    out
}

fn entries(z: &NonAbelianCocycle) -> Vec<Scalar> {
    let mut v = z.h().to_vec();
    v.extend(z.rho().to_vec());
    v.extend(z.phi().to_vec());
    v
}

/// Searches every `φ: M -> C` for one carrying `z1` to `z2`.
pub fn exhaustive_equivalence(z1: &NonAbelianCocycle, z2: &NonAbelianCocycle, budget: u64) -> Result<Option<LinearMap>> {
    let f = z1.field();
    let (dc, dm) = (z1.c().dim(), z1.m().dim());
    let count = point_count(f, dc * dm, budget)?;
    let target = entries(z2);
    for i in 0..count {
        let v = vector_at(f, dc * dm, i);
        if act_entries(z1, &v) == target {
            return Ok(Some(LinearMap::from_vec(z1.m().space().into(), z1.c().space().into(), f, &v)));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependentClassification {
    pub candidates: u64,
    pub cocycles: usize,
    pub classes: usize,
    /// Orbit sizes, sorted.
    pub class_sizes: Vec<usize>,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Orbit count of the cocycles under every `φ`, by union-find. Uses the
/// expansion-based cocycle check and the entrywise action.
pub fn independent_classification(c: &RBLieCoalgebra, m: &RBLieCoalgebra, budget: u64) -> Result<IndependentClassification> {
    let f = c.field();
    let k = triple_parameters(c.dim(), m.dim());
    let candidates = point_count(f, k, budget)?;
    let maps = point_count(f, c.dim() * m.dim(), budget)?;
    let mut cocycles = Vec::new();
    let mut index: HashMap<Vec<Scalar>, usize> = HashMap::new();
    for i in 0..candidates {
        let params = vector_at(f, k, i);
        let z = triple_from_params(c, m, &params)?;
        if independent_cocycle_check(&z) {
            index.insert(params, cocycles.len());
            cocycles.push(z);
        }
    }
    let mut parent: Vec<usize> = (0..cocycles.len()).collect();
    for (i, z) in cocycles.iter().enumerate() {
        for j in 0..maps {
            let image = act_entries(z, &vector_at(f, c.dim() * m.dim(), j));
            let Some(&t) = index.get(&image) else {
                return Err(Error::InternalInconsistency("action left the cocycle set".into()));
            };
            let (a, b) = (find(&mut parent, i), find(&mut parent, t));
            if a != b {
                parent[a] = b;
            }
        }
    }
    let mut sizes: HashMap<usize, usize> = HashMap::new();
    for i in 0..cocycles.len() {
        *sizes.entry(find(&mut parent, i)).or_default() += 1;
    }
    let mut class_sizes: Vec<usize> = sizes.into_values().collect();
    class_sizes.sort_unstable();
    Ok(IndependentClassification { candidates, cocycles: cocycles.len(), classes: class_sizes.len(), class_sizes })
}
