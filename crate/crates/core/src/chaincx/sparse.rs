use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::complex::{ChainComplex, Degree};
use crate::abelian::matrix::IntMatrix;
use crate::abelian::snf::elementary_divisors_sparse;
use crate::abelian::CanonicalGroup;

pub type SparseVec = BTreeMap<usize, BigInt>;

/// Column-major sparse integer matrix.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub columns: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, columns: vec![SparseVec::new(); cols] }
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix { rows: n, columns: (0..n).map(|i| SparseVec::from([(i, BigInt::one())])).collect() }
    }

    pub fn from_dense(m: &IntMatrix) -> Self {
        let columns = (0..m.cols())
            .map(|j| (0..m.rows()).filter(|&i| !m[(i, j)].is_zero()).map(|i| (i, m[(i, j)].clone())).collect())
            .collect();
        SparseMatrix { rows: m.rows(), columns }
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, self.cols());
        for (j, c) in self.columns.iter().enumerate() {
            for (&i, v) in c {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(|c| c.len()).sum()
    }

    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&j, x) in v {
            for (&i, a) in &self.columns[j] {
                add_to(&mut out, i, &(a * x));
            }
        }
        out
    }

    /// `self · other`.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        SparseMatrix { rows: self.rows, columns: other.columns.iter().map(|c| self.mul_vec(c)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }

    fn row_major(&self) -> Vec<BTreeMap<usize, BigInt>> {
        let mut rows = vec![BTreeMap::new(); self.rows];
        for (j, c) in self.columns.iter().enumerate() {
            for (&i, v) in c {
                rows[i].insert(j, v.clone());
            }
        }
        rows
    }

    /// Nonzero invariant factors (including units).
    pub fn elementary_divisors(&self) -> Vec<BigInt> {
        elementary_divisors_sparse(&mut self.row_major(), self.cols())
    }
}

pub fn add_to(v: &mut SparseVec, i: usize, x: &BigInt) {
    if x.is_zero() {
        return;
    }
    let e = v.entry(i).or_insert_with(BigInt::zero);
    *e += x;
    if e.is_zero() {
        v.remove(&i);
    }
}

/// A chain complex with sparse boundaries; `boundaries[k]` is `d_{start+k}`.
#[derive(Clone, Debug, Default)]
pub struct SparseComplex {
    pub start: Degree,
    pub ranks: Vec<usize>,
    pub boundaries: Vec<SparseMatrix>,
}

impl SparseComplex {
    pub fn from_dense(c: &ChainComplex) -> Self {
        let Some((lo, hi)) = c.support() else { return Self::default() };
        SparseComplex {
            start: lo,
            ranks: (lo..=hi).map(|n| c.rank(n)).collect(),
            boundaries: (lo..=hi).map(|n| SparseMatrix::from_dense(&c.boundary(n))).collect(),
        }
    }

    pub fn rank(&self, n: Degree) -> usize {
        if n < self.start {
            return 0;
        }
        self.ranks.get((n - self.start) as usize).copied().unwrap_or(0)
    }

    pub fn max_degree(&self) -> Degree {
        self.start + self.ranks.len() as Degree - 1
    }

    pub fn boundary(&self, n: Degree) -> Option<&SparseMatrix> {
        if n > self.start && n - self.start < self.ranks.len() as Degree {
            Some(&self.boundaries[(n - self.start) as usize])
        } else {
            None
        }
    }

    /// Checks `d∘d = 0` in every degree.
    pub fn is_complex(&self) -> bool {
        (1..self.boundaries.len()).all(|k| self.boundaries[k - 1].mul(&self.boundaries[k]).is_zero())
    }

    pub fn homology(&self, n: Degree) -> CanonicalGroup {
        let rn = self.rank(n);
        if rn == 0 {
            return CanonicalGroup::trivial();
        }
        let out_rank = self.boundary(n).map_or(0, |d| d.elementary_divisors().len());
        let incoming = self.boundary(n + 1).map(|d| d.elementary_divisors()).unwrap_or_default();
        CanonicalGroup::from_orders(rn - out_rank - incoming.len(), &incoming)
    }

    pub fn to_dense(&self) -> ChainComplex {
        ChainComplex::new_unchecked(self.start, self.ranks.clone(), self.boundaries.iter().map(|b| b.to_dense()).collect())
    }

    /// Eliminates unit pivots, producing a homotopy-equivalent dense complex
    /// and the maps between the two.
    pub fn reduce(&self) -> Reduction {
        reduce(self)
    }
}

struct Level {
    cols: HashMap<usize, SparseVec>,
    rows: HashMap<usize, BTreeSet<usize>>,
}

impl Level {
    fn new(m: &SparseMatrix) -> Self {
        let mut rows: HashMap<usize, BTreeSet<usize>> = HashMap::new();
        let mut cols = HashMap::new();
        for (j, c) in m.columns.iter().enumerate() {
            for &i in c.keys() {
                rows.entry(i).or_default().insert(j);
            }
            cols.insert(j, c.clone());
        }
        Level { cols, rows }
    }

    fn remove_row(&mut self, i: usize) {
        if let Some(cs) = self.rows.remove(&i) {
            for j in cs {
                if let Some(c) = self.cols.get_mut(&j) {
                    c.remove(&i);
                }
            }
        }
    }

    fn remove_col(&mut self, j: usize) {
        if let Some(c) = self.cols.remove(&j) {
            for i in c.keys() {
                if let Some(r) = self.rows.get_mut(i) {
                    r.remove(&j);
                }
            }
        }
    }

    fn best_pivot(&self) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, usize)> = None;
        let mut keys: Vec<&usize> = self.cols.keys().collect();
        keys.sort_unstable();
        for &a in keys {
            let col = &self.cols[&a];
            let cl = col.len().saturating_sub(1);
            if best.is_some_and(|b| b.2 == 0) {
                break;
            }
            for (&b, v) in col {
                if v.abs().is_one() {
                    let cost = cl * self.rows[&b].len().saturating_sub(1);
                    if best.map_or(true, |x| cost < x.2) {
                        best = Some((b, a, cost));
                        if cost == 0 {
                            break;
                        }
                    }
                }
            }
        }
        best.map(|(b, a, _)| (b, a))
    }
}

#[derive(Clone, Debug)]
struct Elimination {
    q: Degree,
    a: usize,
    b: usize,
    u: BigInt,
    gamma: Vec<(usize, BigInt)>,
    beta: Vec<(usize, BigInt)>,
}

/// A reduced complex together with the chain equivalence to the original:
/// `forward` is a chain map original → reduced, `backward` reduced → original,
/// with `forward ∘ backward = id`.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub complex: ChainComplex,
    ops: Vec<Elimination>,
    // per degree: surviving original indices in ascending order
    survivors: BTreeMap<Degree, Vec<usize>>,
}

fn reduce(c: &SparseComplex) -> Reduction {
    let n = c.ranks.len();
    let mut levels: Vec<Level> = c.boundaries.iter().map(Level::new).collect();
    let mut alive: Vec<BTreeSet<usize>> = c.ranks.iter().map(|&r| (0..r).collect()).collect();
    let mut ops = Vec::new();
    for k in (1..n).rev() {
        while let Some((b, a)) = levels[k].best_pivot() {
            let q = c.start + k as Degree;
            let col_a = levels[k].cols[&a].clone();
            let u = col_a[&b].clone();
            let gamma: Vec<(usize, BigInt)> =
                col_a.iter().filter(|(&i, _)| i != b).map(|(&i, v)| (i, v.clone())).collect();
            let row_b: Vec<usize> = levels[k].rows[&b].iter().copied().filter(|&x| x != a).collect();
            let mut beta = Vec::with_capacity(row_b.len());
            {
                let lv = &mut levels[k];
                for x in row_b {
                    let dbx = lv.cols[&x][&b].clone();
                    let factor = &dbx * &u;
                    let col_x = lv.cols.get_mut(&x).expect("live column");
                    for (&i, v) in &col_a {
                        add_to(col_x, i, &-(v * &factor));
                        let present = col_x.contains_key(&i);
                        let r = lv.rows.entry(i).or_default();
                        if present {
                            r.insert(x);
                        } else {
                            r.remove(&x);
                        }
                    }
                    beta.push((x, dbx));
                }
                lv.remove_col(a);
                lv.remove_row(b);
            }
            if k + 1 < n {
                levels[k + 1].remove_row(a);
            }
            levels[k - 1].remove_col(b);
            alive[k].remove(&a);
            alive[k - 1].remove(&b);
            ops.push(Elimination { q, a, b, u, gamma, beta });
        }
    }
    let mut survivors = BTreeMap::new();
    let mut ranks = Vec::with_capacity(n);
    let mut bds = Vec::with_capacity(n);
    for k in 0..n {
        let s: Vec<usize> = alive[k].iter().copied().collect();
        ranks.push(s.len());
        survivors.insert(c.start + k as Degree, s);
    }
    for k in 0..n {
        let q = c.start + k as Degree;
        let src = &survivors[&q];
        let rows = if k == 0 { 0 } else { ranks[k - 1] };
        let mut d = IntMatrix::zeros(rows, src.len());
        if k > 0 {
            let pos: HashMap<usize, usize> = survivors[&(q - 1)].iter().enumerate().map(|(p, &i)| (i, p)).collect();
            for (j, idx) in src.iter().enumerate() {
                for (i, v) in &levels[k].cols[idx] {
                    d[(pos[i], j)] = v.clone();
                }
            }
        }
        bds.push(d);
    }
    Reduction { complex: ChainComplex::new_unchecked(c.start, ranks, bds), ops, survivors }
}

impl Reduction {
    fn reduced_rank(&self, q: Degree) -> usize {
        self.survivors.get(&q).map_or(0, |s| s.len())
    }

    /// Image of an original degree-`q` chain in the reduced complex (dense coordinates).
    pub fn forward(&self, q: Degree, v: &SparseVec) -> Vec<BigInt> {
        let mut v = v.clone();
        for op in &self.ops {
            if op.q == q {
                v.remove(&op.a);
            } else if op.q == q + 1 {
                if let Some(vb) = v.remove(&op.b) {
                    let f = &vb * &op.u;
                    for (y, g) in &op.gamma {
                        add_to(&mut v, *y, &-(g * &f));
                    }
                }
            }
        }
        let Some(s) = self.survivors.get(&q) else { return vec![] };
        s.iter().map(|i| v.get(i).cloned().unwrap_or_default()).collect()
    }

    /// Image of a reduced degree-`q` chain in the original complex.
    pub fn backward(&self, q: Degree, x: &[BigInt]) -> SparseVec {
        let mut v = SparseVec::new();
        if let Some(s) = self.survivors.get(&q) {
            for (i, c) in s.iter().zip(x) {
                add_to(&mut v, *i, c);
            }
        }
        for op in self.ops.iter().rev() {
            if op.q == q {
                let mut acc = BigInt::zero();
                for (x, bx) in &op.beta {
                    if let Some(vx) = v.get(x) {
                        acc += bx * vx;
                    }
                }
                add_to(&mut v, op.a, &-(acc * &op.u));
            }
        }
        v
    }

    pub fn forward_dense(&self, q: Degree, v: &[BigInt]) -> Vec<BigInt> {
        let sv = v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect();
        self.forward(q, &sv)
    }

    pub fn backward_dense(&self, q: Degree, x: &[BigInt], original_rank: usize) -> Vec<BigInt> {
        let sv = self.backward(q, x);
        let mut out = vec![BigInt::zero(); original_rank];
        for (i, c) in sv {
            out[i] = c;
        }
        out
    }

    /// The backward map as a dense matrix `original_rank × reduced_rank`.
    pub fn backward_matrix(&self, q: Degree, original_rank: usize) -> IntMatrix {
        let r = self.reduced_rank(q);
        let cols: Vec<Vec<BigInt>> = (0..r)
            .map(|j| {
                let mut e = vec![BigInt::zero(); r];
                e[j] = BigInt::one();
                self.backward_dense(q, &e, original_rank)
            })
            .collect();
        IntMatrix::from_columns(original_rank, &cols)
    }

    /// The forward map as a dense matrix `reduced_rank × original_rank`.
    pub fn forward_matrix(&self, q: Degree, original_rank: usize) -> IntMatrix {
        let cols: Vec<Vec<BigInt>> = (0..original_rank)
            .map(|j| {
                let mut e = SparseVec::new();
                e.insert(j, BigInt::one());
                self.forward(q, &e)
            })
            .collect();
        IntMatrix::from_columns(self.reduced_rank(q), &cols)
    }
}
