use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::abelian::lattice::{presented_homology, Subquotient};
use crate::abelian::matrix::IntMatrix;
use crate::abelian::snf::elementary_divisors;
use crate::abelian::CanonicalGroup;
use crate::error::{Error, Result};

/// Integer degree of a chain complex.
pub type Degree = i64;

/// A bounded chain complex of free f.g. abelian groups.
///
/// Degrees `start .. start + ranks.len()` form the support; `boundaries[k]`
/// is `d_{start+k}` with `rank(start+k-1)` rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    start: Degree,
    ranks: Vec<usize>,
    boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    pub fn new(start: Degree, ranks: Vec<usize>, boundaries: Vec<IntMatrix>) -> Result<Self> {
        if ranks.len() != boundaries.len() {
            return Err(Error::Dimension("one boundary matrix per degree required".into()));
        }
        for (k, d) in boundaries.iter().enumerate() {
            let below = if k == 0 { 0 } else { ranks[k - 1] };
            if d.rows() != below || d.cols() != ranks[k] {
                return Err(Error::Dimension(format!(
                    "d_{} is {}x{}, expected {}x{}",
                    start + k as Degree,
                    d.rows(),
                    d.cols(),
                    below,
                    ranks[k]
                )));
            }
        }
        for k in 1..boundaries.len() {
            if !boundaries[k - 1].mul(&boundaries[k]).is_zero() {
                return Err(Error::NotAComplex(format!("d∘d ≠ 0 at degree {}", start + k as Degree)));
            }
        }
        Ok(Self::trimmed(start, ranks, boundaries))
    }

    pub(crate) fn new_unchecked(start: Degree, ranks: Vec<usize>, boundaries: Vec<IntMatrix>) -> Self {
        Self::trimmed(start, ranks, boundaries)
    }

    fn trimmed(mut start: Degree, mut ranks: Vec<usize>, mut boundaries: Vec<IntMatrix>) -> Self {
        while ranks.last() == Some(&0) {
            ranks.pop();
            boundaries.pop();
        }
        let lead = ranks.iter().take_while(|&&r| r == 0).count();
        if lead > 0 {
            ranks.drain(..lead);
            boundaries.drain(..lead);
            start += lead as Degree;
            if let Some(first) = boundaries.first_mut() {
                *first = IntMatrix::zeros(0, first.cols());
            }
        }
        if ranks.is_empty() {
            start = 0;
        }
        ChainComplex { start, ranks, boundaries }
    }

    pub fn zero() -> Self {
        ChainComplex { start: 0, ranks: vec![], boundaries: vec![] }
    }

    /// A single free group `Z^r` in degree `n`.
    pub fn free_in(n: Degree, r: usize) -> Self {
        Self::trimmed(n, vec![r], vec![IntMatrix::zeros(0, r)])
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.is_empty()
    }

    /// Lowest and highest degree of the support (`None` for the zero complex).
    pub fn support(&self) -> Option<(Degree, Degree)> {
        (!self.ranks.is_empty()).then(|| (self.start, self.start + self.ranks.len() as Degree - 1))
    }

    pub fn min_degree(&self) -> Degree {
        self.start
    }

    pub fn max_degree(&self) -> Degree {
        self.start + self.ranks.len() as Degree - 1
    }

    pub fn rank(&self, n: Degree) -> usize {
        if n < self.start {
            return 0;
        }
        self.ranks.get((n - self.start) as usize).copied().unwrap_or(0)
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.iter().sum()
    }

    /// `d_n : C_n → C_{n-1}` (a zero matrix outside the support).
    pub fn boundary(&self, n: Degree) -> IntMatrix {
        if n > self.start && n - self.start < self.ranks.len() as Degree {
            self.boundaries[(n - self.start) as usize].clone()
        } else {
            IntMatrix::zeros(self.rank(n - 1), self.rank(n))
        }
    }

    pub(crate) fn boundary_ref(&self, n: Degree) -> Option<&IntMatrix> {
        if n > self.start && n - self.start < self.ranks.len() as Degree {
            Some(&self.boundaries[(n - self.start) as usize])
        } else {
            None
        }
    }

    pub fn homology(&self, n: Degree) -> CanonicalGroup {
        homology(self, n)
    }

    /// `H_n` with explicit coordinates: ambient is `C_n`.
    pub fn homology_subquotient(&self, n: Degree) -> Subquotient {
        presented_homology(
            &self.boundary(n + 1),
            &self.boundary(n),
            &IntMatrix::zeros(self.rank(n), 0),
            &IntMatrix::zeros(self.rank(n - 1), 0),
        )
        .expect("homology of a valid complex")
    }

    pub fn homology_all(&self) -> GradedGroup {
        let mut g = GradedGroup::new();
        if let Some((lo, hi)) = self.support() {
            for n in lo..=hi {
                g.set(n, self.homology(n));
            }
        }
        g
    }

    pub fn direct_sum(&self, other: &ChainComplex) -> ChainComplex {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.start.min(other.start);
        let hi = self.max_degree().max(other.max_degree());
        let mut ranks = Vec::new();
        let mut bds = Vec::new();
        for n in lo..=hi {
            ranks.push(self.rank(n) + other.rank(n));
            let d = if n == lo {
                IntMatrix::zeros(0, self.rank(n) + other.rank(n))
            } else {
                self.boundary(n).block_diag(&other.boundary(n))
            };
            bds.push(d);
        }
        Self::trimmed(lo, ranks, bds)
    }

    /// Offset of `other`'s basis inside `self.direct_sum(other)` at degree n.
    pub fn sum_offset(&self, n: Degree) -> usize {
        self.rank(n)
    }
}

pub fn homology(y: &ChainComplex, n: Degree) -> CanonicalGroup {
    let rn = y.rank(n);
    if rn == 0 {
        return CanonicalGroup::trivial();
    }
    let out_rank = y.boundary_ref(n).map_or(0, |d| elementary_divisors(d).len());
    let incoming = y.boundary_ref(n + 1).map(elementary_divisors).unwrap_or_default();
    CanonicalGroup::from_orders(rn - out_rank - incoming.len(), &incoming)
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    support: Option<(Degree, Degree)>,
    ranks: Vec<usize>,
    boundaries: Vec<IntMatrix>,
}

impl Serialize for ChainComplex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ComplexJson { support: self.support(), ranks: self.ranks.clone(), boundaries: self.boundaries.clone() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ChainComplex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = ComplexJson::deserialize(d)?;
        let start = j.support.map_or(0, |s| s.0);
        if let Some((lo, hi)) = j.support {
            if hi - lo + 1 != j.ranks.len() as Degree {
                return Err(serde::de::Error::custom("support and ranks disagree"));
            }
        }
        ChainComplex::new(start, j.ranks, j.boundaries).map_err(serde::de::Error::custom)
    }
}

/// A finitely supported graded abelian group.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradedGroup {
    groups: BTreeMap<Degree, CanonicalGroup>,
}

impl GradedGroup {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(n: Degree, g: CanonicalGroup) -> Self {
        let mut x = Self::new();
        x.set(n, g);
        x
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Degree, CanonicalGroup)>) -> Self {
        let mut x = Self::new();
        for (n, g) in pairs {
            x.set(n, g);
        }
        x
    }

    pub fn set(&mut self, n: Degree, g: CanonicalGroup) {
        if g.is_trivial() {
            self.groups.remove(&n);
        } else {
            self.groups.insert(n, g);
        }
    }

    pub fn get(&self, n: Degree) -> CanonicalGroup {
        self.groups.get(&n).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.groups.is_empty()
    }

    /// Nonzero degrees with their groups, ascending.
    pub fn iter(&self) -> impl Iterator<Item = (Degree, &CanonicalGroup)> {
        self.groups.iter().map(|(n, g)| (*n, g))
    }

    pub fn degrees(&self) -> Vec<Degree> {
        self.groups.keys().copied().collect()
    }

    pub fn min_degree(&self) -> Option<Degree> {
        self.groups.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<Degree> {
        self.groups.keys().next_back().copied()
    }

    pub fn direct_sum(&self, other: &GradedGroup) -> GradedGroup {
        let mut out = self.clone();
        for (n, g) in other.iter() {
            out.set(n, out.get(n).direct_sum(g));
        }
        out
    }
}

/// A chain map between complexes; `component(n)` is `rank_target(n) × rank_source(n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub source: ChainComplex,
    pub target: ChainComplex,
    components: BTreeMap<Degree, IntMatrix>,
}

impl ChainMap {
    pub fn new(source: ChainComplex, target: ChainComplex, components: BTreeMap<Degree, IntMatrix>) -> Result<Self> {
        let m = Self::new_unchecked(source, target, components)?;
        m.check()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(
        source: ChainComplex,
        target: ChainComplex,
        components: BTreeMap<Degree, IntMatrix>,
    ) -> Result<Self> {
        for (&n, c) in &components {
            if c.rows() != target.rank(n) || c.cols() != source.rank(n) {
                return Err(Error::Dimension(format!("chain map component in degree {n} has the wrong shape")));
            }
        }
        let components = components.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(ChainMap { source, target, components })
    }

    fn check(&self) -> Result<()> {
        let lo = self.source.min_degree().min(self.target.min_degree());
        let hi = self.source.max_degree().max(self.target.max_degree()) + 1;
        for n in lo..=hi {
            let lhs = self.target.boundary(n).mul(&self.component(n));
            let rhs = self.component(n - 1).mul(&self.source.boundary(n));
            if lhs != rhs {
                return Err(Error::NotAChainMap(format!("square at degree {n} does not commute")));
            }
        }
        Ok(())
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex) -> Self {
        ChainMap { source: source.clone(), target: target.clone(), components: BTreeMap::new() }
    }

    pub fn identity(c: &ChainComplex) -> Self {
        let mut comps = BTreeMap::new();
        if let Some((lo, hi)) = c.support() {
            for n in lo..=hi {
                comps.insert(n, IntMatrix::identity(c.rank(n)));
            }
        }
        ChainMap { source: c.clone(), target: c.clone(), components: comps }
    }

    pub fn component(&self, n: Degree) -> IntMatrix {
        self.components
            .get(&n)
            .cloned()
            .unwrap_or_else(|| IntMatrix::zeros(self.target.rank(n), self.source.rank(n)))
    }

    pub fn components(&self) -> &BTreeMap<Degree, IntMatrix> {
        &self.components
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ChainMap) -> Result<ChainMap> {
        let mut comps = BTreeMap::new();
        for (&n, c) in &self.components {
            comps.insert(n, other.component(n).mul(c));
        }
        Self::new_unchecked(self.source.clone(), other.target.clone(), comps)
    }

    pub fn add(&self, other: &ChainMap) -> ChainMap {
        let mut comps = self.components.clone();
        for (&n, c) in &other.components {
            let e = comps.entry(n).or_insert_with(|| IntMatrix::zeros(c.rows(), c.cols()));
            *e = e.add(c);
        }
        ChainMap { source: self.source.clone(), target: self.target.clone(), components: comps }
    }

    /// Induced map on `H_n` in canonical coordinates.
    pub fn on_homology(&self, n: Degree) -> Result<crate::abelian::Homomorphism> {
        let s = self.source.homology_subquotient(n);
        let t = self.target.homology_subquotient(n);
        let m = s.induced_matrix(&t, &self.component(n))?;
        crate::abelian::Homomorphism::between(s.group(), t.group(), m)
    }
}

/// The two-term resolution of `A` placed in degrees `n+1 → n`.
pub fn moore_complex(a: &CanonicalGroup, n: Degree) -> ChainComplex {
    let p = a.presentation();
    let t = p.relations.cols();
    ChainComplex::trimmed(n, vec![p.generators, t], vec![IntMatrix::zeros(0, p.generators), p.relations])
}

/// `⊕_n C(B_n, n)`, summands in ascending degree.
pub fn canonical_complex(b: &GradedGroup) -> ChainComplex {
    b.iter().fold(ChainComplex::zero(), |acc, (n, g)| acc.direct_sum(&moore_complex(g, n)))
}

/// `k`-fold suspension: degrees shift by `k`, and the boundary leaving
/// original degree `n` is multiplied by `(−1)^{k·n}`.
pub fn suspension(y: &ChainComplex, k: Degree) -> ChainComplex {
    if y.is_zero() {
        return y.clone();
    }
    let bds = y
        .boundaries
        .iter()
        .enumerate()
        .map(|(i, d)| {
            let n = y.start + i as Degree;
            if (k * n).rem_euclid(2) == 1 {
                d.neg()
            } else {
                d.clone()
            }
        })
        .collect();
    ChainComplex::trimmed(y.start + k, y.ranks.clone(), bds)
}

/// Basis offsets of `(Y⊗Z)_n = ⊕_{i+j=n} Y_i ⊗ Z_j`, keyed by `i`.
pub fn tensor_offsets(y: &ChainComplex, z: &ChainComplex, n: Degree) -> BTreeMap<Degree, usize> {
    let mut out = BTreeMap::new();
    let mut off = 0;
    if let (Some((ylo, yhi)), Some(_)) = (y.support(), z.support()) {
        for i in ylo..=yhi {
            let r = y.rank(i) * z.rank(n - i);
            if r > 0 {
                out.insert(i, off);
                off += r;
            }
        }
    }
    out
}

/// Tensor product with `d(x⊗y) = dx⊗y + (−1)^{|x|} x⊗dy`; the basis of
/// `Y_i ⊗ Z_j` is indexed `a·rank(Z_j) + b`.
pub fn tensor_complex(y: &ChainComplex, z: &ChainComplex) -> ChainComplex {
    let (Some((ylo, yhi)), Some((zlo, zhi))) = (y.support(), z.support()) else {
        return ChainComplex::zero();
    };
    let lo = ylo + zlo;
    let hi = yhi + zhi;
    let rank = |n: Degree| (ylo..=yhi).map(|i| y.rank(i) * z.rank(n - i)).sum::<usize>();
    let mut ranks = Vec::new();
    let mut bds = Vec::new();
    for n in lo..=hi {
        ranks.push(rank(n));
        let mut d = IntMatrix::zeros(if n == lo { 0 } else { rank(n - 1) }, rank(n));
        if n > lo {
            let src = tensor_offsets(y, z, n);
            let dst = tensor_offsets(y, z, n - 1);
            for (&i, &off) in &src {
                let j = n - i;
                if let Some(&o) = dst.get(&(i - 1)) {
                    d.set_block(o, off, &y.boundary(i).kron(&IntMatrix::identity(z.rank(j))));
                }
                if let Some(&o) = dst.get(&i) {
                    let sign = if i.rem_euclid(2) == 1 { -BigInt::one() } else { BigInt::one() };
                    d.add_block(o, off, &IntMatrix::identity(y.rank(i)).kron(&z.boundary(j)), &sign);
                }
            }
        }
        bds.push(d);
    }
    ChainComplex::trimmed(lo, ranks, bds)
}

/// `Hom(A, G)` as vectors: the coordinates of a homomorphism sending the
/// i-th generator of `A` to an element with coordinates `cols[i]`.
pub(crate) fn hom_vector(cols: &[Vec<BigInt>], gh: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); cols.len() * gh];
    for (i, c) in cols.iter().enumerate() {
        for (j, x) in c.iter().enumerate() {
            v[i * gh + j] = x.clone();
        }
    }
    v
}
