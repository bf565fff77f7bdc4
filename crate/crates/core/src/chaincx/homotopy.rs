use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::complex::{hom_vector, moore_complex, ChainComplex, ChainMap, Degree};
use super::sparse::{Reduction, SparseComplex};
use crate::abelian::functor::{functor_subquotient, BinaryKind};
use crate::abelian::lattice::{presented_homology, Subquotient};
use crate::abelian::matrix::IntMatrix;
use crate::abelian::{CanonicalGroup, Homomorphism};
use crate::error::Result;

/// Chain maps `C → Y` modulo chain homotopy, with coordinates.
///
/// The target is first reduced to a smaller homotopy-equivalent complex;
/// representatives are transported back to the original target.
#[derive(Clone, Debug)]
pub struct HomotopyClasses {
    pub source: ChainComplex,
    pub target: ChainComplex,
    reduction: Reduction,
    // degree -> offset of Hom(C_n, Y'_n) in the ambient lattice
    offsets: BTreeMap<Degree, usize>,
    sq: Subquotient,
}

fn hom_offsets(c: &ChainComplex, y: &ChainComplex, shift: Degree) -> (BTreeMap<Degree, usize>, usize) {
    let mut off = BTreeMap::new();
    let mut total = 0;
    if let Some((lo, hi)) = c.support() {
        for n in lo..=hi {
            let r = c.rank(n) * y.rank(n + shift);
            if r > 0 {
                off.insert(n, total);
                total += r;
            }
        }
    }
    (off, total)
}

impl HomotopyClasses {
    pub fn new(c: &ChainComplex, y: &ChainComplex) -> Self {
        let reduction = SparseComplex::from_dense(y).reduce();
        Self::with_reduction(c, y, reduction)
    }

    /// Uses a precomputed reduction of `y`.
    pub fn with_reduction(c: &ChainComplex, y: &ChainComplex, reduction: Reduction) -> Self {
        let yr = &reduction.complex;
        let (o0, n0) = hom_offsets(c, yr, 0);
        let (om, nm) = hom_offsets(c, yr, -1);
        let (o1, n1) = hom_offsets(c, yr, 1);
        // D0: f -> d f - f d
        let mut d0 = IntMatrix::zeros(nm, n0);
        for (&n, &off) in &o0 {
            let (cn, dy) = (c.rank(n), yr.boundary(n));
            if let Some(&t) = om.get(&n) {
                for i in 0..yr.rank(n) {
                    for j in 0..cn {
                        for r in 0..yr.rank(n - 1) {
                            let v = &dy[(r, i)];
                            if !v.is_zero() {
                                d0[(t + r * cn + j, off + i * cn + j)] += v;
                            }
                        }
                    }
                }
            }
            // -f_n d^C_{n+1} lands in Hom(C_{n+1}, Y_n)
            if let Some(&t) = om.get(&(n + 1)) {
                let dc = c.boundary(n + 1);
                let cn1 = c.rank(n + 1);
                for i in 0..yr.rank(n) {
                    for j in 0..cn {
                        for col in 0..cn1 {
                            let v = &dc[(j, col)];
                            if !v.is_zero() {
                                d0[(t + i * cn1 + col, off + i * cn + j)] -= v;
                            }
                        }
                    }
                }
            }
        }
        // D1: h -> d h + h d
        let mut d1 = IntMatrix::zeros(n0, n1);
        for (&n, &off) in &o1 {
            let cn = c.rank(n);
            let dy = yr.boundary(n + 1);
            if let Some(&t) = o0.get(&n) {
                for i in 0..yr.rank(n + 1) {
                    for j in 0..cn {
                        for r in 0..yr.rank(n) {
                            let v = &dy[(r, i)];
                            if !v.is_zero() {
                                d1[(t + r * cn + j, off + i * cn + j)] += v;
                            }
                        }
                    }
                }
            }
            if let Some(&t) = o0.get(&(n + 1)) {
                let dc = c.boundary(n + 1);
                let cn1 = c.rank(n + 1);
                for i in 0..yr.rank(n + 1) {
                    for j in 0..cn {
                        for col in 0..cn1 {
                            let v = &dc[(j, col)];
                            if !v.is_zero() {
                                d1[(t + i * cn1 + col, off + i * cn + j)] += v;
                            }
                        }
                    }
                }
            }
        }
        let sq = presented_homology(&d1, &d0, &IntMatrix::zeros(n0, 0), &IntMatrix::zeros(nm, 0))
            .expect("hom complex is a complex");
        HomotopyClasses { source: c.clone(), target: y.clone(), reduction, offsets: o0, sq }
    }

    pub fn group(&self) -> &CanonicalGroup {
        self.sq.group()
    }

    pub fn reduced_target(&self) -> &ChainComplex {
        &self.reduction.complex
    }

    pub fn reduction(&self) -> &Reduction {
        &self.reduction
    }

    fn unpack(&self, v: &[BigInt]) -> BTreeMap<Degree, IntMatrix> {
        let yr = &self.reduction.complex;
        let mut comps = BTreeMap::new();
        for (&n, &off) in &self.offsets {
            let (r, cn) = (yr.rank(n), self.source.rank(n));
            let mut m = IntMatrix::zeros(r, cn);
            for i in 0..r {
                for j in 0..cn {
                    m[(i, j)] = v[off + i * cn + j].clone();
                }
            }
            comps.insert(n, m);
        }
        comps
    }

    fn pack(&self, comps: &BTreeMap<Degree, IntMatrix>) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.sq.ambient()];
        for (&n, &off) in &self.offsets {
            if let Some(m) = comps.get(&n) {
                let cn = self.source.rank(n);
                for i in 0..m.rows() {
                    for j in 0..cn {
                        v[off + i * cn + j] = m[(i, j)].clone();
                    }
                }
            }
        }
        v
    }

    /// A chain map into the reduced target with the given class coordinates.
    pub fn reduced_representative(&self, coords: &[BigInt]) -> ChainMap {
        let comps = self.unpack(&self.sq.element(coords));
        ChainMap::new_unchecked(self.source.clone(), self.reduction.complex.clone(), comps)
            .expect("shapes agree by construction")
    }

    /// A chain map `C → Y` representing the class with the given coordinates.
    pub fn representative(&self, coords: &[BigInt]) -> ChainMap {
        let red = self.reduced_representative(coords);
        let mut comps = BTreeMap::new();
        for (&n, m) in red.components() {
            let g = self.reduction.backward_matrix(n, self.target.rank(n));
            comps.insert(n, g.mul(m));
        }
        ChainMap::new_unchecked(self.source.clone(), self.target.clone(), comps).expect("shapes agree")
    }

    /// Class coordinates of a chain map into the reduced target, given by components.
    pub fn reduced_class_of(&self, comps: &BTreeMap<Degree, IntMatrix>) -> Result<Vec<BigInt>> {
        self.sq.coords(&self.pack(comps))
    }

    /// Class coordinates of a chain map `C → Y`.
    pub fn class_of(&self, f: &ChainMap) -> Result<Vec<BigInt>> {
        let mut comps = BTreeMap::new();
        for (&n, m) in f.components() {
            let fw = self.reduction.forward_matrix(n, self.target.rank(n));
            comps.insert(n, fw.mul(m));
        }
        self.reduced_class_of(&comps)
    }
}

pub fn homotopy_classes(c: &ChainComplex, y: &ChainComplex) -> CanonicalGroup {
    HomotopyClasses::new(c, y).group().clone()
}

/// `H_n(A, Y)` with its sequence `Ext(A, H_{n+1}Y) ↣ H_n(A,Y) ↠ Hom(A, H_nY)`.
#[derive(Clone, Debug)]
pub struct PseudoHomology {
    pub a: CanonicalGroup,
    pub n: Degree,
    pub classes: HomotopyClasses,
    pub ext: CanonicalGroup,
    pub hom: CanonicalGroup,
    pub delta: Homomorphism,
    pub mu: Homomorphism,
    h_n: Subquotient,
    h_n1: Subquotient,
}

impl PseudoHomology {
    pub fn group(&self) -> &CanonicalGroup {
        self.classes.group()
    }

    /// Homology of the (reduced) target in degree n, with coordinates.
    pub fn homology_n(&self) -> &Subquotient {
        &self.h_n
    }

    pub fn homology_n1(&self) -> &Subquotient {
        &self.h_n1
    }

    /// μ of a class given by coordinates, as coordinates in `Hom(A, H_n)`.
    pub fn mu_coords(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.mu.apply(x).into_iter().zip(self.hom.orders()).map(|(v, o)| if o.is_zero() { v } else { num_integer::Integer::mod_floor(&v, &o) }).collect()
    }
}

pub fn pseudo_homology(a: &CanonicalGroup, n: Degree, y: &ChainComplex) -> PseudoHomology {
    let c = moore_complex(a, n);
    pseudo_homology_with(a, n, HomotopyClasses::new(&c, y))
}

/// Pseudo-homology where the homotopy classes (from `C(A,n)`) are already computed.
pub fn pseudo_homology_with(a: &CanonicalGroup, n: Degree, classes: HomotopyClasses) -> PseudoHomology {
    let yr = classes.reduction.complex.clone();
    let h_n = yr.homology_subquotient(n);
    let h_n1 = yr.homology_subquotient(n + 1);
    let pa = a.presentation();
    let hom_sq = functor_subquotient(BinaryKind::Hom, &pa, &h_n.group().presentation());
    let ext_sq = functor_subquotient(BinaryKind::Ext, &pa, &h_n1.group().presentation());
    let group = classes.group().clone();

    let mut mu_cols = Vec::new();
    for k in 0..group.num_generators() {
        let mut e = vec![BigInt::zero(); group.num_generators()];
        e[k] = 1.into();
        let f = classes.reduced_representative(&e);
        let fnm = f.component(n);
        let cols: Vec<Vec<BigInt>> =
            (0..pa.generators).map(|i| h_n.coords(&fnm.column(i)).expect("cycle")).collect();
        let v = hom_vector(&cols, h_n.group().num_generators());
        mu_cols.push(hom_sq.coords(&v).expect("homomorphism"));
    }
    let mu = Homomorphism::between(&group, hom_sq.group(), IntMatrix::from_columns(hom_sq.group().num_generators(), &mu_cols))
        .expect("μ is well defined");

    let z = h_n1.generators();
    let gh = h_n1.group().num_generators();
    let ta = pa.relations.cols();
    let mut delta_cols = Vec::new();
    for k in 0..ext_sq.group().num_generators() {
        let v = ext_sq.generator(k);
        let mut rep = IntMatrix::zeros(gh, ta);
        for l in 0..ta {
            for j in 0..gh {
                rep[(j, l)] = v[l * gh + j].clone();
            }
        }
        let mut comps = BTreeMap::new();
        comps.insert(n + 1, z.mul(&rep));
        delta_cols.push(classes.reduced_class_of(&comps).expect("Δ lands in chain maps"));
    }
    let delta = Homomorphism::between(ext_sq.group(), &group, IntMatrix::from_columns(group.num_generators(), &delta_cols))
        .expect("Δ is well defined");
    PseudoHomology {
        a: a.clone(),
        n,
        classes,
        ext: ext_sq.group().clone(),
        hom: hom_sq.group().clone(),
        delta,
        mu,
        h_n,
        h_n1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classes_from_moore_complexes() {
        let z = CanonicalGroup::z();
        let z2 = CanonicalGroup::cyclic(2);
        assert_eq!(homotopy_classes(&moore_complex(&z, 2), &moore_complex(&z2, 2)), z2);
        assert_eq!(homotopy_classes(&moore_complex(&z2, 2), &moore_complex(&z, 3)), z2);
        assert!(homotopy_classes(&moore_complex(&z2, 2), &ChainComplex::zero()).is_trivial());
    }

    #[test]
    fn pseudo_homology_order() {
        let z2 = CanonicalGroup::cyclic(2);
        let y = moore_complex(&z2, 2).direct_sum(&moore_complex(&z2, 3));
        let p = pseudo_homology(&z2, 2, &y);
        assert_eq!(p.group().order(), Some(4.into()));
        assert!(p.delta.is_injective());
        assert!(p.mu.is_surjective());
        assert!(p.delta.then(&p.mu).unwrap().is_zero());
    }
}
