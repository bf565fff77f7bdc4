//! Quadratic tensor products of free groups and the induced maps of
//! arbitrary integer matrices.

use num_bigint::BigInt;
use num_traits::Zero;

use super::module::QuadraticZModule;
use crate::abelian::matrix::IntMatrix;
use crate::chaincx::sparse::{add_to, SparseMatrix, SparseVec};

/// Target indexing for quadratic tensor expressions. Returning `None` drops
/// the term (used for quotients by spanned basis subsets).
pub trait QuadIndex {
    fn e(&self, k: usize, mu: usize) -> Option<usize>;
    /// Pair `[e_k, e_l]` with `k < l`.
    fn pair(&self, k: usize, l: usize, nu: usize) -> Option<usize>;
}

/// Standard basis of `Z^s ⊗ M`: blocks `e_k ⊗ m_μ` first, then
/// `[e_k, e_l] ⊗ n_ν` for `k < l` in lexicographic order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadBasis {
    pub s: usize,
    pub ge: usize,
    pub gee: usize,
}

pub fn pair_index(k: usize, l: usize, s: usize) -> usize {
    debug_assert!(k < l && l < s);
    k * (2 * s - k - 1) / 2 + (l - k - 1)
}

impl QuadBasis {
    pub fn new(s: usize, m: &QuadraticZModule) -> Self {
        QuadBasis { s, ge: m.ge(), gee: m.gee() }
    }

    pub fn len(&self) -> usize {
        self.s * self.ge + self.s * self.s.saturating_sub(1) / 2 * self.gee
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn e_index(&self, k: usize, mu: usize) -> usize {
        k * self.ge + mu
    }

    pub fn pair_offset(&self) -> usize {
        self.s * self.ge
    }

    pub fn pair_index(&self, k: usize, l: usize, nu: usize) -> usize {
        self.s * self.ge + pair_index(k, l, self.s) * self.gee + nu
    }

    /// Relation columns: copies of the `M_e` and `M_ee` relations.
    pub fn relations(&self, m: &QuadraticZModule) -> IntMatrix {
        let re = m.m_e.presentation().relations;
        let ree = m.m_ee.presentation().relations;
        let npairs = self.s * self.s.saturating_sub(1) / 2;
        let cols = self.s * re.cols() + npairs * ree.cols();
        let mut r = IntMatrix::zeros(self.len(), cols);
        let mut c = 0;
        for k in 0..self.s {
            r.set_block(k * self.ge, c, &re);
            c += re.cols();
        }
        for p in 0..npairs {
            r.set_block(self.s * self.ge + p * self.gee, c, &ree);
            c += ree.cols();
        }
        r
    }
}

impl QuadIndex for QuadBasis {
    fn e(&self, k: usize, mu: usize) -> Option<usize> {
        Some(self.e_index(k, mu))
    }
    fn pair(&self, k: usize, l: usize, nu: usize) -> Option<usize> {
        Some(self.pair_index(k, l, nu))
    }
}

/// `H`, `P`, `PH` and `T = HP − 1` of a module as sparse columns.
#[derive(Clone, Debug)]
pub struct ModuleMaps {
    pub h: Vec<SparseVec>,
    pub p: Vec<SparseVec>,
    pub ph: Vec<SparseVec>,
    pub t: Vec<SparseVec>,
}

fn sparse_columns(m: &IntMatrix) -> Vec<SparseVec> {
    (0..m.cols())
        .map(|j| (0..m.rows()).filter(|&i| !m[(i, j)].is_zero()).map(|i| (i, m[(i, j)].clone())).collect())
        .collect()
}

impl ModuleMaps {
    pub fn new(m: &QuadraticZModule) -> Self {
        let h = &m.h.gen_matrix;
        let p = &m.p.gen_matrix;
        let t = h.mul(p).sub(&IntMatrix::identity(m.gee()));
        ModuleMaps { h: sparse_columns(h), p: sparse_columns(p), ph: sparse_columns(&p.mul(h)), t: sparse_columns(&t) }
    }
}

fn put(out: &mut SparseVec, idx: Option<usize>, c: &BigInt) {
    if let Some(i) = idx {
        add_to(out, i, c);
    }
}

/// Image of `x ⊗ m_μ` where `x = Σ c_k e_k` (entries sorted by `k`).
pub fn expand_e<I: QuadIndex>(mm: &ModuleMaps, x: &[(usize, BigInt)], mu: usize, idx: &I, out: &mut SparseVec) {
    for (pos, (k, c)) in x.iter().enumerate() {
        put(out, idx.e(*k, mu), c);
        let binom: BigInt = c * (c - 1) / 2;
        if !binom.is_zero() {
            for (m2, v) in &mm.ph[mu] {
                put(out, idx.e(*k, *m2), &(&binom * v));
            }
        }
        for (l, d) in &x[pos + 1..] {
            let cc = c * d;
            for (nu, v) in &mm.h[mu] {
                put(out, idx.pair(*k, *l, *nu), &(&cc * v));
            }
        }
    }
}

/// Image of `[x, y] ⊗ n_ν`.
pub fn expand_pair<I: QuadIndex>(
    mm: &ModuleMaps,
    x: &[(usize, BigInt)],
    y: &[(usize, BigInt)],
    nu: usize,
    idx: &I,
    out: &mut SparseVec,
) {
    for (k, a) in x {
        for (l, b) in y {
            let ab = a * b;
            match k.cmp(l) {
                std::cmp::Ordering::Less => put(out, idx.pair(*k, *l, nu), &ab),
                std::cmp::Ordering::Greater => {
                    for (n2, v) in &mm.t[nu] {
                        put(out, idx.pair(*l, *k, *n2), &(&ab * v));
                    }
                }
                std::cmp::Ordering::Equal => {
                    for (mu, v) in &mm.p[nu] {
                        put(out, idx.e(*k, *mu), &(&ab * v));
                    }
                }
            }
        }
    }
}

fn column_terms(f: &IntMatrix, j: usize) -> Vec<(usize, BigInt)> {
    (0..f.rows()).filter(|&i| !f[(i, j)].is_zero()).map(|i| (i, f[(i, j)].clone())).collect()
}

/// The matrix of `f ⊗ M : Z^s ⊗ M → Z^t ⊗ M` for `f: Z^s → Z^t` in the
/// standard bases.
pub fn quad_map(f: &IntMatrix, m: &QuadraticZModule) -> IntMatrix {
    let mm = ModuleMaps::new(m);
    let src = QuadBasis::new(f.cols(), m);
    let dst = QuadBasis::new(f.rows(), m);
    let cols_f: Vec<_> = (0..f.cols()).map(|j| column_terms(f, j)).collect();
    let mut out = IntMatrix::zeros(dst.len(), src.len());
    let mut write = |col: usize, v: SparseVec| {
        for (i, x) in v {
            out[(i, col)] = x;
        }
    };
    for i in 0..src.s {
        for mu in 0..src.ge {
            let mut v = SparseVec::new();
            expand_e(&mm, &cols_f[i], mu, &dst, &mut v);
            write(src.e_index(i, mu), v);
        }
    }
    for i in 0..src.s {
        for j in i + 1..src.s {
            for nu in 0..src.gee {
                let mut v = SparseVec::new();
                expand_pair(&mm, &cols_f[i], &cols_f[j], nu, &dst, &mut v);
                write(src.pair_index(i, j, nu), v);
            }
        }
    }
    out
}

/// Sparse counterpart of [`quad_map`].
pub fn quad_map_sparse(f: &SparseMatrix, m: &QuadraticZModule) -> SparseMatrix {
    let mm = ModuleMaps::new(m);
    let src = QuadBasis::new(f.cols(), m);
    let dst = QuadBasis::new(f.rows, m);
    let cols_f: Vec<Vec<(usize, BigInt)>> =
        f.columns.iter().map(|c| c.iter().map(|(&i, v)| (i, v.clone())).collect()).collect();
    let mut out = SparseMatrix::zeros(dst.len(), src.len());
    for i in 0..src.s {
        for mu in 0..src.ge {
            expand_e(&mm, &cols_f[i], mu, &dst, &mut out.columns[src.e_index(i, mu)]);
        }
    }
    for i in 0..src.s {
        for j in i + 1..src.s {
            for nu in 0..src.gee {
                expand_pair(&mm, &cols_f[i], &cols_f[j], nu, &dst, &mut out.columns[src.pair_index(i, j, nu)]);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn functorial_on_small_maps() {
        let m = QuadraticZModule::gamma();
        let f = IntMatrix::from_rows(&[vec![1, -2], vec![3, 1], vec![0, 2]]);
        let g = IntMatrix::from_rows(&[vec![2, 0, 1], vec![-1, 1, 1]]);
        assert_eq!(quad_map(&g.mul(&f), &m), quad_map(&g, &m).mul(&quad_map(&f, &m)));
        assert!(quad_map(&IntMatrix::identity(3), &m).is_identity());
    }

    #[test]
    fn gamma_of_scalar() {
        // γ(c·e) = c² γ(e) in Γ(Z) = Z
        let m = QuadraticZModule::gamma();
        let f = IntMatrix::from_rows(&[vec![-3]]);
        assert_eq!(quad_map(&f, &m), IntMatrix::from_rows(&[vec![9]]));
    }
}
