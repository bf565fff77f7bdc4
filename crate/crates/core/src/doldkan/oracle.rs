use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::Zero;

use super::simplicial::Denormalized;
use crate::abelian::lattice::presented_homology;
use crate::abelian::matrix::IntMatrix;
use crate::abelian::CanonicalGroup;
use crate::chaincx::sparse::{add_to, Reduction, SparseComplex, SparseMatrix, SparseVec};
use crate::chaincx::{ChainComplex, ChainMap, Degree};
use crate::error::{Error, Result};
use crate::quadratic::qmap::{expand_e, expand_pair, ModuleMaps};
use crate::quadratic::{QuadIndex, QuadraticZModule};

/// Basis of `(K_q ⊗ M) / D_q` for `K = N⁻¹Y`: the degenerate subgroup `D_q`
/// is spanned by basis elements (images of degeneracies permute the
/// basis of `K` and `T = HP − 1` is invertible), so the quotient keeps
/// `e_x ⊗ m` for nondegenerate `x` and `[e_x, e_z] ⊗ n` for `x < z` whose
/// repeat sets are disjoint.
#[derive(Clone, Debug)]
struct QuotientLevel {
    ge: usize,
    gee: usize,
    // K-index range of the identity block
    id_start: usize,
    id_len: usize,
    pairs: HashMap<(usize, usize), usize>,
    pair_list: Vec<(usize, usize)>,
}

impl QuotientLevel {
    fn new(dn: &Denormalized, q: usize, m: &QuadraticZModule) -> Self {
        let lvl = &dn.levels[q];
        let full = super::surjection::Surjection::identity(q).jumps;
        let (mut id_start, mut id_len) = (0, 0);
        for &(s, off, r) in &lvl.blocks {
            if s.is_identity() {
                id_start = off;
                id_len = r;
            }
        }
        let mut pair_list = Vec::new();
        if m.gee() > 0 {
            for (i, &(s1, o1, r1)) in lvl.blocks.iter().enumerate() {
                for &(s2, o2, r2) in &lvl.blocks[i..] {
                    if s1.jumps | s2.jumps != full {
                        continue;
                    }
                    for b1 in 0..r1 {
                        for b2 in 0..r2 {
                            let (x, z) = (o1 + b1, o2 + b2);
                            if x < z {
                                pair_list.push((x, z));
                            }
                        }
                    }
                }
            }
        }
        let base = id_len * m.ge();
        let pairs = pair_list.iter().enumerate().map(|(p, &xz)| (xz, base + p * m.gee())).collect();
        QuotientLevel { ge: m.ge(), gee: m.gee(), id_start, id_len, pairs, pair_list }
    }

    fn len(&self) -> usize {
        self.id_len * self.ge + self.pair_list.len() * self.gee
    }

    fn relations(&self, m: &QuadraticZModule) -> IntMatrix {
        let re = m.m_e.presentation().relations;
        let ree = m.m_ee.presentation().relations;
        let mut r = IntMatrix::zeros(self.len(), self.id_len * re.cols() + self.pair_list.len() * ree.cols());
        let mut c = 0;
        for k in 0..self.id_len {
            r.set_block(k * self.ge, c, &re);
            c += re.cols();
        }
        for p in 0..self.pair_list.len() {
            r.set_block(self.id_len * self.ge + p * self.gee, c, &ree);
            c += ree.cols();
        }
        r
    }
}

impl QuadIndex for QuotientLevel {
    fn e(&self, k: usize, mu: usize) -> Option<usize> {
        (k >= self.id_start && k < self.id_start + self.id_len).then(|| (k - self.id_start) * self.ge + mu)
    }
    fn pair(&self, k: usize, l: usize, nu: usize) -> Option<usize> {
        self.pairs.get(&(k, l)).map(|o| o + nu)
    }
}

/// Source basis element of a quotient level.
#[derive(Clone, Copy, Debug)]
enum Cell {
    E(usize, usize),
    Pair(usize, usize, usize),
}

impl QuotientLevel {
    fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        let es = (0..self.id_len).flat_map(move |k| (0..self.ge).map(move |mu| Cell::E(self.id_start + k, mu)));
        let ps = self.pair_list.iter().flat_map(move |&(x, z)| (0..self.gee).map(move |nu| Cell::Pair(x, z, nu)));
        es.chain(ps)
    }
}

fn push_scaled(col: &mut SparseVec, tmp: SparseVec, sign: &BigInt) {
    for (i, v) in tmp {
        add_to(col, i, &(v * sign));
    }
}

/// `M₍#₎(Y) = N((N⁻¹Y) ⊗ M)` through degree `T`, realised as the quotient
/// of `(N⁻¹Y) ⊗ M` by its degenerate subcomplex with differential
/// `Σ (−1)^j d_j`.
#[derive(Clone, Debug)]
pub struct MSharp {
    pub module: QuadraticZModule,
    pub truncation: usize,
    dn: Denormalized,
    levels: Vec<QuotientLevel>,
    mm: ModuleMaps,
    /// Boundaries `d_q` for `q = 0..=T` (`d_0` has no rows).
    pub boundaries: Vec<SparseMatrix>,
}

impl MSharp {
    pub fn new(y: &ChainComplex, m: &QuadraticZModule, truncation: usize) -> Result<Self> {
        let dn = Denormalized::new(y, truncation)?;
        let levels: Vec<QuotientLevel> = (0..=truncation).map(|q| QuotientLevel::new(&dn, q, m)).collect();
        let mm = ModuleMaps::new(m);
        let mut boundaries = vec![SparseMatrix::zeros(0, levels[0].len())];
        for q in 1..=truncation {
            let (src, dst) = (&levels[q], &levels[q - 1]);
            let mut d = SparseMatrix::zeros(dst.len(), src.len());
            for (c, cell) in src.cells().enumerate() {
                let col = &mut d.columns[c];
                for j in 0..=q {
                    let sign = BigInt::from(if j % 2 == 0 { 1 } else { -1 });
                    let mut tmp = SparseVec::new();
                    match cell {
                        Cell::E(x, mu) => expand_e(&mm, &dn.face(q, j, x), mu, dst, &mut tmp),
                        Cell::Pair(x, z, nu) => {
                            expand_pair(&mm, &dn.face(q, j, x), &dn.face(q, j, z), nu, dst, &mut tmp)
                        }
                    }
                    push_scaled(col, tmp, &sign);
                }
            }
            boundaries.push(d);
        }
        Ok(MSharp { module: m.clone(), truncation, dn, levels, mm, boundaries })
    }

    pub fn rank(&self, q: usize) -> usize {
        self.levels.get(q).map_or(0, |l| l.len())
    }

    fn check_degree(&self, n: usize) -> Result<()> {
        if n >= self.truncation {
            return Err(Error::Truncation { needed: n + 1, have: self.truncation });
        }
        Ok(())
    }

    /// The free chain groups as a sparse complex (free `M` only).
    pub fn sparse_complex(&self) -> Result<SparseComplex> {
        if !self.module.is_free() {
            return Err(Error::InvalidArgument("sparse chain complex needs free M_e and M_ee".into()));
        }
        Ok(SparseComplex {
            start: 0,
            ranks: (0..=self.truncation).map(|q| self.rank(q)).collect(),
            boundaries: self.boundaries.clone(),
        })
    }

    /// `H_n M₍#₎(Y)`; needs `n < T`.
    pub fn homology(&self, n: usize) -> Result<CanonicalGroup> {
        self.check_degree(n)?;
        if self.module.is_free() {
            return Ok(self.sparse_complex()?.homology(n as Degree));
        }
        let rel = |q: usize| self.levels[q].relations(&self.module);
        let dense = |q: usize| self.boundaries[q].to_dense();
        let f1 = if n == 0 { IntMatrix::zeros(0, self.rank(0)) } else { dense(n) };
        let r0 = if n == 0 { IntMatrix::zeros(0, 0) } else { rel(n - 1) };
        Ok(presented_homology(&dense(n + 1), &f1, &rel(n), &r0)?.group().clone())
    }

    /// Unit-pivot reduction of the free complex, homotopy equivalent and
    /// typically far smaller.
    pub fn reduce(&self) -> Result<Reduction> {
        Ok(self.sparse_complex()?.reduce())
    }

    /// The reduced complex in the reliable range `0..T` (top degree dropped).
    pub fn reduced_complex(&self) -> Result<ChainComplex> {
        let r = self.reduce()?;
        Ok(restrict_below(&r.complex, self.truncation as Degree))
    }

    /// Degree-`q` component of `f₍#₎ : M₍#₎(Y) → M₍#₎(Y')` induced by a chain map `f: Y → Y'`.
    pub fn induced(&self, f: &ChainMap, target: &MSharp, q: usize) -> SparseMatrix {
        let (src, dst) = (&self.levels[q], &target.levels[q]);
        let comps: BTreeMap<usize, SparseMatrix> = (0..=q)
            .map(|k| (k, SparseMatrix::from_dense(&f.component(k as Degree))))
            .collect();
        let lift = |x: usize| -> Vec<(usize, BigInt)> {
            let s = self.dn.levels[q].surjection(x);
            let (_, b) = self.dn.levels[q].owner[x];
            let Some(off) = target.dn.levels[q].offset(&s) else { return vec![] };
            comps[&s.target()].columns[b].iter().map(|(&r, v)| (off + r, v.clone())).collect()
        };
        let mut out = SparseMatrix::zeros(dst.len(), src.len());
        for (c, cell) in src.cells().enumerate() {
            match cell {
                Cell::E(x, mu) => expand_e(&self.mm, &lift(x), mu, dst, &mut out.columns[c]),
                Cell::Pair(x, z, nu) => expand_pair(&self.mm, &lift(x), &lift(z), nu, dst, &mut out.columns[c]),
            }
        }
        out
    }

    /// `f₍#₎` between the reduced complexes of `self` and `target` in the
    /// reliable range, as a chain map.
    pub fn induced_reduced(
        &self,
        f: &ChainMap,
        target: &MSharp,
        red_src: &Reduction,
        red_tgt: &Reduction,
    ) -> Result<ChainMap> {
        let t = self.truncation.min(target.truncation);
        self.induced_through(f, target, red_src, red_tgt, t - 1)
    }

    /// The reduced complex including degree `T`: homotopy equivalent to the
    /// brutal truncation at `T`, which suffices as a target for maps and
    /// homotopies out of complexes concentrated below `T`.
    pub fn reduced_truncation(&self) -> Result<ChainComplex> {
        Ok(restrict_below(&self.reduce()?.complex, self.truncation as Degree + 1))
    }

    /// `f₍#₎` between the reduced brutal truncations, degrees `0..=min T`.
    pub fn induced_truncation(
        &self,
        f: &ChainMap,
        target: &MSharp,
        red_src: &Reduction,
        red_tgt: &Reduction,
    ) -> Result<ChainMap> {
        self.induced_through(f, target, red_src, red_tgt, self.truncation.min(target.truncation))
    }

    fn induced_through(
        &self,
        f: &ChainMap,
        target: &MSharp,
        red_src: &Reduction,
        red_tgt: &Reduction,
        top: usize,
    ) -> Result<ChainMap> {
        let mut comps = BTreeMap::new();
        for q in 0..=top {
            let fq = self.induced(f, target, q);
            let rs = red_src.complex.rank(q as Degree);
            let rt = red_tgt.complex.rank(q as Degree);
            let mut m = IntMatrix::zeros(rt, rs);
            for j in 0..rs {
                let mut e = vec![BigInt::zero(); rs];
                e[j] = BigInt::from(1);
                let back = red_src.backward(q as Degree, &e);
                let img = fq.mul_vec(&back);
                for (i, v) in red_tgt.forward(q as Degree, &img).into_iter().enumerate() {
                    m[(i, j)] = v;
                }
            }
            comps.insert(q as Degree, m);
        }
        let s = restrict_below(&red_src.complex, top as Degree + 1);
        let tg = restrict_below(&red_tgt.complex, top as Degree + 1);
        ChainMap::new(s, tg, comps)
    }
}

fn restrict_below(c: &ChainComplex, t: Degree) -> ChainComplex {
    let ranks: Vec<usize> = (0..t).map(|q| c.rank(q)).collect();
    let bds = (0..t).map(|q| c.boundary(q)).collect();
    ChainComplex::new(0, ranks, bds).expect("restriction of a complex")
}

/// Ground truth `H_n M₍#₎(Y)` with truncation `n + 1`.
pub fn m_sharp_oracle(y: &ChainComplex, m: &QuadraticZModule, n: usize) -> Result<CanonicalGroup> {
    MSharp::new(y, m, n + 1)?.homology(n)
}

/// Same, with an explicit truncation (rejected when too small).
pub fn m_sharp_oracle_truncated(y: &ChainComplex, m: &QuadraticZModule, n: usize, t: usize) -> Result<CanonicalGroup> {
    super::simplicial::TruncationPolicy::with_truncation(n, t)?;
    MSharp::new(y, m, t)?.homology(n)
}
