use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;

use super::surjection::{FaceImage, Surjection};
use crate::abelian::lattice::{column_basis, in_lattice, kernel_basis, solve_matrix};
use crate::abelian::matrix::IntMatrix;
use crate::chaincx::sparse::{SparseMatrix, SparseVec};
use crate::chaincx::{ChainComplex, Degree};
use crate::error::{Error, Result};
use crate::quadratic::{quad_map_sparse, QuadBasis, QuadraticZModule};

/// A simplicial abelian group truncated at degree `T`, degreewise
/// finitely generated. Degree `q` is `Z^{ranks[q]}` modulo `relations[q]`
/// (no columns when free).
///
/// `faces[q][i]: K_q → K_{q−1}` for `1 ≤ q ≤ T`; `degeneracies[q][i]: K_q → K_{q+1}` for `q < T`.
#[derive(Clone, Debug)]
pub struct SimplicialAbelianGroup {
    pub truncation: usize,
    pub ranks: Vec<usize>,
    pub relations: Vec<IntMatrix>,
    pub faces: Vec<Vec<SparseMatrix>>,
    pub degeneracies: Vec<Vec<SparseMatrix>>,
}

/// Truncation needed for a homology query in degree `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TruncationPolicy {
    pub degree: usize,
    pub truncation: usize,
}

impl TruncationPolicy {
    pub fn for_degree(n: usize) -> Self {
        TruncationPolicy { degree: n, truncation: n + 1 }
    }

    pub fn with_truncation(n: usize, t: usize) -> Result<Self> {
        if t < n + 1 {
            return Err(Error::Truncation { needed: n + 1, have: t });
        }
        Ok(TruncationPolicy { degree: n, truncation: t })
    }
}

impl SimplicialAbelianGroup {
    /// Validates shapes and the simplicial identities.
    pub fn new(
        truncation: usize,
        ranks: Vec<usize>,
        relations: Vec<IntMatrix>,
        faces: Vec<Vec<SparseMatrix>>,
        degeneracies: Vec<Vec<SparseMatrix>>,
    ) -> Result<Self> {
        let k = SimplicialAbelianGroup { truncation, ranks, relations, faces, degeneracies };
        k.check_shapes()?;
        k.check_identities()?;
        Ok(k)
    }

    /// The constant simplicial group on `Z^r`.
    pub fn constant(r: usize, truncation: usize) -> Self {
        let id = SparseMatrix::identity(r);
        SimplicialAbelianGroup {
            truncation,
            ranks: vec![r; truncation + 1],
            relations: vec![IntMatrix::zeros(r, 0); truncation + 1],
            faces: (0..=truncation).map(|q| vec![id.clone(); if q == 0 { 0 } else { q + 1 }]).collect(),
            degeneracies: (0..truncation).map(|q| vec![id.clone(); q + 1]).collect(),
        }
    }

    pub fn rank(&self, q: usize) -> usize {
        self.ranks.get(q).copied().unwrap_or(0)
    }

    pub fn is_free(&self) -> bool {
        self.relations.iter().all(|r| r.cols() == 0)
    }

    fn check_shapes(&self) -> Result<()> {
        let t = self.truncation;
        let bad = |what: String| Err(Error::Dimension(what));
        if self.ranks.len() != t + 1 || self.relations.len() != t + 1 || self.faces.len() != t + 1 {
            return bad("per-degree data must cover degrees 0..=T".into());
        }
        if self.degeneracies.len() != t {
            return bad("degeneracies must cover degrees 0..T".into());
        }
        for q in 0..=t {
            if self.relations[q].rows() != self.ranks[q] {
                return bad(format!("relations in degree {q}"));
            }
            let nf = if q == 0 { 0 } else { q + 1 };
            if self.faces[q].len() != nf {
                return bad(format!("degree {q} needs {nf} faces"));
            }
            for f in &self.faces[q] {
                if f.cols() != self.ranks[q] || f.rows != self.ranks[q - 1] {
                    return bad(format!("face shape in degree {q}"));
                }
            }
            if q < t {
                if self.degeneracies[q].len() != q + 1 {
                    return bad(format!("degree {q} needs {} degeneracies", q + 1));
                }
                for s in &self.degeneracies[q] {
                    if s.cols() != self.ranks[q] || s.rows != self.ranks[q + 1] {
                        return bad(format!("degeneracy shape in degree {q}"));
                    }
                }
            }
        }
        Ok(())
    }

    fn same_map(&self, a: &SparseMatrix, b: &SparseMatrix, target: usize) -> bool {
        if a == b {
            return true;
        }
        let rel = &self.relations[target];
        if rel.cols() == 0 {
            return false;
        }
        in_lattice(rel, &a.to_dense().sub(&b.to_dense()))
    }

    /// Every simplicial identity that is defined below the truncation, as
    /// an exact matrix equation (modulo relations where present).
    pub fn check_identities(&self) -> Result<()> {
        let t = self.truncation;
        let fail = |s: String| Err(Error::IllFormed(format!("simplicial identity fails: {s}")));
        let d = |q: usize, i: usize| &self.faces[q][i];
        let s = |q: usize, i: usize| &self.degeneracies[q][i];
        for q in 2..=t {
            for j in 1..=q {
                for i in 0..j {
                    if !self.same_map(&d(q - 1, i).mul(d(q, j)), &d(q - 1, j - 1).mul(d(q, i)), q - 2) {
                        return fail(format!("d{i} d{j} in degree {q}"));
                    }
                }
            }
        }
        for q in 0..t {
            let id = SparseMatrix::identity(self.ranks[q]);
            for j in 0..=q {
                for i in 0..=q + 1 {
                    let lhs = d(q + 1, i).mul(s(q, j));
                    let rhs = if i < j {
                        s(q - 1, j - 1).mul(d(q, i))
                    } else if i == j || i == j + 1 {
                        id.clone()
                    } else {
                        s(q - 1, j).mul(d(q, i - 1))
                    };
                    if !self.same_map(&lhs, &rhs, q) {
                        return fail(format!("d{i} s{j} in degree {q}"));
                    }
                }
            }
        }
        for q in 0..t.saturating_sub(1) {
            for j in 0..=q {
                for i in 0..=j {
                    if !self.same_map(&s(q + 1, i).mul(s(q, j)), &s(q + 1, j + 1).mul(s(q, i)), q + 2) {
                        return fail(format!("s{i} s{j} in degree {q}"));
                    }
                }
            }
        }
        Ok(())
    }

    /// The Moore complex `N_q = ∩_{i>0} ker d_i` with boundary `d_0`, in
    /// degrees `0..=T`. Homology in degree `T` is not reliable.
    pub fn normalize(&self) -> Result<Normalized> {
        if !self.is_free() {
            return Err(Error::InvalidArgument("normalization is implemented for degreewise free groups".into()));
        }
        let t = self.truncation;
        let mut bases = Vec::with_capacity(t + 1);
        for q in 0..=t {
            let r = self.ranks[q];
            if q == 0 || r == 0 {
                bases.push(IntMatrix::identity(r));
                continue;
            }
            let mut stacked = IntMatrix::zeros(0, r);
            for i in 1..=q {
                stacked = stacked.vstack(&self.faces[q][i].to_dense());
            }
            bases.push(column_basis(&kernel_basis(&stacked)));
        }
        let mut boundaries = vec![IntMatrix::zeros(0, bases[0].cols())];
        for q in 1..=t {
            let img = self.faces[q][0].to_dense().mul(&bases[q]);
            let m = solve_matrix(&bases[q - 1], &img).ok_or_else(|| Error::IllFormed("d_0 leaves the Moore complex".into()))?;
            boundaries.push(m);
        }
        let ranks = bases.iter().map(|b| b.cols()).collect();
        Ok(Normalized { complex: ChainComplex::new(0, ranks, boundaries)?, truncation: t, bases })
    }
}

/// Output of [`SimplicialAbelianGroup::normalize`].
#[derive(Clone, Debug)]
pub struct Normalized {
    pub complex: ChainComplex,
    pub truncation: usize,
    /// Columns span `N_q` inside `K_q`.
    pub bases: Vec<IntMatrix>,
}

impl Normalized {
    /// `π_n`, refused in the top degree.
    pub fn homotopy(&self, n: usize) -> Result<crate::abelian::CanonicalGroup> {
        if n >= self.truncation {
            return Err(Error::Truncation { needed: n + 1, have: self.truncation });
        }
        Ok(self.complex.homology(n as Degree))
    }

    /// The complex restricted to the reliable range `0..T`.
    pub fn reliable(&self) -> ChainComplex {
        let t = self.truncation;
        let ranks: Vec<usize> = (0..t).map(|q| self.complex.rank(q as Degree)).collect();
        let bds = (0..t).map(|q| self.complex.boundary(q as Degree)).collect();
        ChainComplex::new(0, ranks, bds).expect("restriction of a complex")
    }
}

/// Basis of `(N⁻¹Y)_q = ⊕_{σ: [q]↠[k]} Y_k`, blocks ordered by `(k, σ)`.
#[derive(Clone, Debug)]
pub(crate) struct DenormLevel {
    pub blocks: Vec<(Surjection, usize, usize)>,
    pub index: HashMap<u64, usize>,
    /// element -> (block, basis index in Y_k)
    pub owner: Vec<(usize, usize)>,
}

impl DenormLevel {
    fn new(y: &ChainComplex, q: usize) -> Self {
        let mut blocks = Vec::new();
        let mut index = HashMap::new();
        let mut owner = Vec::new();
        let mut off = 0;
        for k in 0..=q {
            let r = y.rank(k as Degree);
            if r == 0 {
                continue;
            }
            for s in Surjection::all(q, k) {
                index.insert(s.jumps, blocks.len());
                owner.extend((0..r).map(|b| (blocks.len(), b)));
                blocks.push((s, off, r));
                off += r;
            }
        }
        DenormLevel { blocks, index, owner }
    }

    pub fn len(&self) -> usize {
        self.owner.len()
    }

    pub fn offset(&self, s: &Surjection) -> Option<usize> {
        self.index.get(&s.jumps).map(|&b| self.blocks[b].1)
    }

    pub fn surjection(&self, x: usize) -> Surjection {
        self.blocks[self.owner[x].0].0
    }
}

/// `N⁻¹Y` truncated at `T`, with direct access to face and degeneracy images
/// of basis elements.
#[derive(Clone, Debug)]
pub(crate) struct Denormalized {
    pub levels: Vec<DenormLevel>,
    dy: Vec<SparseMatrix>,
}

impl Denormalized {
    pub fn new(y: &ChainComplex, t: usize) -> Result<Self> {
        if !y.is_zero() && y.min_degree() < 0 {
            return Err(Error::InvalidArgument("N⁻¹ needs a complex concentrated in degrees ≥ 0".into()));
        }
        let levels = (0..=t).map(|q| DenormLevel::new(y, q)).collect();
        let dy = (0..=t).map(|k| SparseMatrix::from_dense(&y.boundary(k as Degree))).collect();
        Ok(Denormalized { levels, dy })
    }

    /// `d_j` of basis element `x` in degree `q`, sorted by index.
    pub fn face(&self, q: usize, j: usize, x: usize) -> Vec<(usize, BigInt)> {
        let (blk, b) = self.levels[q].owner[x];
        let s = self.levels[q].blocks[blk].0;
        let lower = &self.levels[q - 1];
        match s.face(j) {
            FaceImage::Same(t) => vec![(lower.offset(&t).expect("block exists") + b, BigInt::one())],
            FaceImage::MissesZero(t) => {
                let col = &self.dy[s.target()].columns[b];
                if col.is_empty() {
                    return vec![];
                }
                let off = lower.offset(&t).expect("block exists");
                col.iter().map(|(&r, v)| (off + r, v.clone())).collect()
            }
            FaceImage::Zero => vec![],
        }
    }

    pub fn degeneracy(&self, q: usize, j: usize, x: usize) -> usize {
        let (blk, b) = self.levels[q].owner[x];
        let s = self.levels[q].blocks[blk].0.degeneracy(j);
        self.levels[q + 1].offset(&s).expect("block exists") + b
    }

    fn face_matrix(&self, q: usize, j: usize) -> SparseMatrix {
        let mut m = SparseMatrix::zeros(self.levels[q - 1].len(), self.levels[q].len());
        for x in 0..self.levels[q].len() {
            m.columns[x] = self.face(q, j, x).into_iter().collect::<SparseVec>();
        }
        m
    }

    fn degeneracy_matrix(&self, q: usize, j: usize) -> SparseMatrix {
        let mut m = SparseMatrix::zeros(self.levels[q + 1].len(), self.levels[q].len());
        for x in 0..self.levels[q].len() {
            m.columns[x].insert(self.degeneracy(q, j, x), BigInt::one());
        }
        m
    }
}

/// `N⁻¹Y` through degree `T`: degree `q` is `⊕_{[q]↠[k]} Y_k`.
pub fn denormalize(y: &ChainComplex, truncation: usize) -> Result<SimplicialAbelianGroup> {
    let dn = Denormalized::new(y, truncation)?;
    let ranks: Vec<usize> = dn.levels.iter().map(|l| l.len()).collect();
    let faces = (0..=truncation)
        .map(|q| if q == 0 { vec![] } else { (0..=q).map(|j| dn.face_matrix(q, j)).collect() })
        .collect();
    let degeneracies = (0..truncation).map(|q| (0..=q).map(|j| dn.degeneracy_matrix(q, j)).collect()).collect();
    let relations = ranks.iter().map(|&r| IntMatrix::zeros(r, 0)).collect();
    Ok(SimplicialAbelianGroup { truncation, ranks, relations, faces, degeneracies })
}

/// `K ⊗ M` degreewise, with the quadratic-tensor-induced faces and degeneracies.
pub fn apply_quadratic_degreewise(k: &SimplicialAbelianGroup, m: &QuadraticZModule) -> Result<SimplicialAbelianGroup> {
    if !k.is_free() {
        return Err(Error::InvalidArgument("degreewise quadratic tensor needs a degreewise free input".into()));
    }
    let ranks: Vec<usize> = k.ranks.iter().map(|&r| QuadBasis::new(r, m).len()).collect();
    let relations = k.ranks.iter().map(|&r| QuadBasis::new(r, m).relations(m)).collect();
    let faces = k.faces.iter().map(|fs| fs.iter().map(|f| quad_map_sparse(f, m)).collect()).collect();
    let degeneracies = k.degeneracies.iter().map(|ss| ss.iter().map(|s| quad_map_sparse(s, m)).collect()).collect();
    SimplicialAbelianGroup::new(k.truncation, ranks, relations, faces, degeneracies)
}
