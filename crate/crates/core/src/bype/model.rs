use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::abelian::{functor_subquotient, solve, BinaryKind, CanonicalGroup, ExtClass, Homomorphism, IntMatrix, Subquotient};
use crate::chaincx::complex::hom_vector;
use crate::chaincx::{canonical_complex, moore_complex, pseudo_homology_with, ChainComplex, ChainMap, Degree, GradedGroup, HomotopyClasses, PseudoHomology};
use crate::doldkan::MSharp;
use crate::error::{Error, Result};
use crate::quadratic::QuadraticZModule;

/// Offsets of the Moore summands inside `C(B)`: the generators of `B_n` sit
/// in degree `n`, its relations in degree `n + 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Layout {
    pub generators: BTreeMap<Degree, usize>,
    pub relations: BTreeMap<Degree, usize>,
}

impl Layout {
    pub fn of(b: &GradedGroup) -> Layout {
        let mut acc = ChainComplex::zero();
        let mut out = Layout::default();
        for (n, g) in b.iter() {
            out.generators.insert(n, acc.rank(n));
            out.relations.insert(n, acc.rank(n + 1));
            acc = acc.direct_sum(&moore_complex(g, n));
        }
        out
    }
}

/// `Λ₍#₎C(B)` on chain level, reduced, through degree `T`.
///
/// `Sq_n(B)` is its homology and `Sq_n(A, B)` its pseudo-homology; both are
/// reliable for `n < T`.
#[derive(Clone, Debug)]
pub struct SqModel {
    pub groups: GradedGroup,
    pub truncation: usize,
    pub layout: Layout,
    pub complex: ChainComplex,
    msharp: MSharp,
    reduction: crate::chaincx::Reduction,
    reduced: ChainComplex,
}

impl SqModel {
    pub fn new(groups: &GradedGroup, truncation: usize) -> Result<SqModel> {
        if let Some(n) = groups.min_degree().filter(|&n| n < 1) {
            return Err(Error::InvalidArgument(format!("bype groups must live in degrees ≥ 1, found degree {n}")));
        }
        let complex = canonical_complex(groups);
        let msharp = MSharp::new(&complex, &QuadraticZModule::lambda(), truncation)?;
        let reduction = msharp.reduce()?;
        let reduced = msharp.reduced_truncation()?;
        Ok(SqModel { groups: groups.clone(), truncation, layout: Layout::of(groups), complex, msharp, reduction, reduced })
    }

    /// `B` concentrated in degree `m`.
    pub fn single(d: &CanonicalGroup, m: Degree, truncation: usize) -> Result<SqModel> {
        Self::new(&GradedGroup::single(m, d.clone()), truncation)
    }

    fn check(&self, n: Degree) -> Result<()> {
        if n < 0 || n as usize >= self.truncation {
            return Err(Error::Truncation { needed: n.max(0) as usize + 1, have: self.truncation });
        }
        Ok(())
    }

    pub fn reduced(&self) -> &ChainComplex {
        &self.reduced
    }

    /// `Sq_n(B)` with coordinates.
    pub fn sq(&self, n: Degree) -> Result<Subquotient> {
        self.check(n)?;
        Ok(self.reduced.homology_subquotient(n))
    }

    /// `Sq_n(A, B)` with its sequence.
    pub fn pseudo(&self, a: &CanonicalGroup, n: Degree) -> Result<PseudoHomology> {
        self.check(n)?;
        Ok(pseudo_homology_with(a, n, HomotopyClasses::new(&moore_complex(a, n), &self.reduced)))
    }

    /// The map induced on reduced complexes by a chain map `C(B) → C(B')`.
    pub fn induced(&self, f: &ChainMap, target: &SqModel) -> Result<ChainMap> {
        if f.source != self.complex || f.target != target.complex {
            return Err(Error::Dimension("chain map does not run between the canonical complexes".into()));
        }
        self.msharp.induced_truncation(f, &target.msharp, &self.reduction, &target.reduction)
    }

    /// `b_n` as a homomorphism `B_n → Sq_{n−1}(B)`.
    pub fn b_hom(&self, n: Degree, m: Option<&IntMatrix>) -> Result<Homomorphism> {
        let sq = self.sq(n - 1)?;
        let bn = self.groups.get(n);
        let m = m.cloned().unwrap_or_else(|| IntMatrix::zeros(sq.group().num_generators(), bn.num_generators()));
        if m.rows() != sq.group().num_generators() || m.cols() != bn.num_generators() {
            return Err(Error::Dimension(format!(
                "b_{n} is {}x{}, but Sq_{}(B) = {} needs {}x{}",
                m.rows(),
                m.cols(),
                n - 1,
                sq.group(),
                sq.group().num_generators(),
                bn.num_generators()
            )));
        }
        Homomorphism::between(&bn, sq.group(), m)
    }
}

/// The chain map `C(φ) + α: C(B) → C(B')`.
pub fn sum_chain_map(
    src: &SqModel,
    tgt: &SqModel,
    phi: &BTreeMap<Degree, Homomorphism>,
    alpha: &BTreeMap<Degree, ExtClass>,
) -> Result<ChainMap> {
    let (c, c2) = (&src.complex, &tgt.complex);
    let mut comps: BTreeMap<Degree, IntMatrix> = BTreeMap::new();
    let mut block = |q: Degree, r: usize, col: usize, m: &IntMatrix| {
        if m.rows() == 0 || m.cols() == 0 {
            return;
        }
        comps.entry(q).or_insert_with(|| IntMatrix::zeros(c2.rank(q), c.rank(q))).set_block(r, col, m);
    };
    for (n, g) in src.groups.iter() {
        let g2 = tgt.groups.get(n);
        if let Some(f) = phi.get(&n) {
            check_hom(f, g, &g2, n)?;
            if !g2.is_trivial() {
                block(n, tgt.layout.generators[&n], src.layout.generators[&n], &f.gen_matrix);
                block(n + 1, tgt.layout.relations[&n], src.layout.relations[&n], &f.relation_lift());
            }
        }
        if let Some(a) = alpha.get(&n) {
            let g3 = tgt.groups.get(n + 1);
            if a.a != g.presentation() || a.b != g3.presentation() {
                return Err(Error::Dimension(format!("α_{n} must lie in Ext(B_{n}, B'_{})", n + 1)));
            }
            if !g3.is_trivial() {
                block(n + 1, tgt.layout.generators[&(n + 1)], src.layout.relations[&n], &a.representative);
            }
        }
    }
    ChainMap::new(c.clone(), c2.clone(), comps)
}

fn check_hom(f: &Homomorphism, a: &CanonicalGroup, b: &CanonicalGroup, n: Degree) -> Result<()> {
    if f.domain != a.presentation() || f.codomain != b.presentation() {
        return Err(Error::Dimension(format!("φ_{n} must run {a} → {b}")));
    }
    Ok(())
}

/// `C(f): C(A, n) → C(A', n)`.
pub fn moore_map(f: &Homomorphism, n: Degree) -> Result<ChainMap> {
    let (a, b) = (f.domain.canonicalize(), f.codomain.canonicalize());
    let mut comps = BTreeMap::new();
    comps.insert(n, f.gen_matrix.clone());
    comps.insert(n + 1, f.relation_lift());
    ChainMap::new(moore_complex(&a, n), moore_complex(&b, n), comps)
}

/// Projection `C(B) → C(B_m, m)` onto one Moore summand.
pub fn projection(model: &SqModel, m: Degree, target: &SqModel) -> Result<ChainMap> {
    let g = model.groups.get(m);
    let mut comps = BTreeMap::new();
    let (c, c2) = (&model.complex, &target.complex);
    if !g.is_trivial() {
        let p = g.presentation();
        let mut lo = IntMatrix::zeros(c2.rank(m), c.rank(m));
        lo.set_block(0, model.layout.generators[&m], &IntMatrix::identity(p.generators));
        comps.insert(m, lo);
        let t = p.relations.cols();
        if t > 0 {
            let mut hi = IntMatrix::zeros(c2.rank(m + 1), c.rank(m + 1));
            hi.set_block(0, model.layout.relations[&m], &IntMatrix::identity(t));
            comps.insert(m + 1, hi);
        }
    }
    ChainMap::new(c.clone(), c2.clone(), comps)
}

/// Coordinates of `f ∈ Hom(A, H)` from the images of the generators of `A`.
pub fn hom_coords(a: &CanonicalGroup, h: &CanonicalGroup, m: &IntMatrix) -> Result<Vec<BigInt>> {
    let sq = functor_subquotient(BinaryKind::Hom, &a.presentation(), &h.presentation());
    let cols: Vec<Vec<BigInt>> = (0..m.cols()).map(|j| m.column(j)).collect();
    sq.coords(&hom_vector(&cols, h.num_generators()))
}

/// Whether `v` lies in the subgroup of `g` generated by the columns of `gens`.
pub fn in_subgroup(g: &CanonicalGroup, gens: &IntMatrix, v: &[BigInt]) -> bool {
    let orders = g.orders();
    let mut a = gens.clone();
    for (i, o) in orders.iter().enumerate() {
        if !o.is_zero() {
            let mut col = vec![BigInt::zero(); orders.len()];
            col[i] = o.clone();
            a = a.hstack(&IntMatrix::from_columns(orders.len(), &[col]));
        }
    }
    if a.cols() == 0 {
        return v.iter().all(Zero::is_zero);
    }
    solve(&a, v).is_some()
}

/// Generators of `im(Δ ∘ (b_{n+1})_*)` inside `Sq_{n−1}(B_n, B)`.
pub fn delta_image(p: &PseudoHomology, bn: &CanonicalGroup, b_next: &Homomorphism) -> Result<IntMatrix> {
    let ext = crate::abelian::induced_map(BinaryKind::Ext, b_next, crate::abelian::Slot::Right, bn)?;
    if *p.homology_n1().group() != b_next.codomain.canonicalize() {
        return Err(Error::Dimension("b_{n+1} does not land in Sq_n(B)".into()));
    }
    Ok(p.delta.gen_matrix.mul(&ext.gen_matrix))
}

/// Inverse of [`hom_coords`]: the matrix of the homomorphism with coordinates `c` in `Hom(A, H)`.
pub fn hom_from_coords(a: &CanonicalGroup, h: &CanonicalGroup, c: &[BigInt]) -> IntMatrix {
    let sq = functor_subquotient(BinaryKind::Hom, &a.presentation(), &h.presentation());
    let v = sq.element(c);
    let gh = h.num_generators();
    let mut m = IntMatrix::zeros(gh, a.num_generators());
    for i in 0..a.num_generators() {
        for (j, x) in h.reduce(&v[i * gh..(i + 1) * gh]).into_iter().enumerate() {
            m[(j, i)] = x;
        }
    }
    m
}
