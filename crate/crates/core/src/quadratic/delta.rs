use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::module::QuadraticZModule;
use super::qmap::{expand_pair, quad_map, ModuleMaps, QuadBasis};
use crate::abelian::lattice::{presented_homology, Subquotient};
use crate::abelian::matrix::IntMatrix;
use crate::abelian::{CanonicalGroup, Homomorphism, Presentation};
use crate::chaincx::sparse::SparseVec;
use crate::chaincx::ChainComplex;
use crate::error::{Error, Result};

/// The three-term complex `M_#(d_B)`:
/// `Y₁⊗Y₁⊗M_ee →δ₂ Y₁⊗M ⊕ Y₁⊗Y₀⊗M_ee →δ₁ Y₀⊗M`.
///
/// `δ₁` is the quadratic tensor of `d_B` on `Y₁⊗M` and `a⊗b⊗n ↦ [d_B a, b]⊗n`;
/// `δ₂(a⊗a'⊗n) = −a⊗d_B a'⊗n + [a, a']⊗n`.
#[derive(Clone, Debug)]
pub struct DeltaComplex {
    pub module: QuadraticZModule,
    pub resolution: Presentation,
    pub c0: Presentation,
    pub c1: Presentation,
    pub c2: Presentation,
    pub d1: IntMatrix,
    pub d2: IntMatrix,
    y1_basis: QuadBasis,
}

impl DeltaComplex {
    /// `b` must have injective relations (a free resolution of its cokernel).
    pub fn new(b: &Presentation, m: &QuadraticZModule) -> Result<Self> {
        if !b.relations_injective() {
            return Err(Error::InvalidArgument("δ-complex needs a free resolution".into()));
        }
        let t0 = b.generators;
        let t1 = b.relations.cols();
        let db = &b.relations;
        let gee = m.gee();
        let q0 = QuadBasis::new(t0, m);
        let q1 = QuadBasis::new(t1, m);
        let mm = ModuleMaps::new(m);
        let mixed = |a: usize, bb: usize, nu: usize| q1.len() + (a * t0 + bb) * gee + nu;
        let n1 = q1.len() + t1 * t0 * gee;
        let n2 = t1 * t1 * gee;

        let mut d1 = IntMatrix::zeros(q0.len(), n1);
        d1.set_block(0, 0, &quad_map(db, m));
        let col = |j: usize| -> Vec<(usize, BigInt)> {
            (0..t0).filter(|&i| !db[(i, j)].is_zero()).map(|i| (i, db[(i, j)].clone())).collect()
        };
        for a in 0..t1 {
            let da = col(a);
            for bb in 0..t0 {
                let eb = vec![(bb, BigInt::one())];
                for nu in 0..gee {
                    let mut v = SparseVec::new();
                    expand_pair(&mm, &da, &eb, nu, &q0, &mut v);
                    for (i, x) in v {
                        d1[(i, mixed(a, bb, nu))] = x;
                    }
                }
            }
        }

        let mut d2 = IntMatrix::zeros(n1, n2);
        for a in 0..t1 {
            for a2 in 0..t1 {
                for nu in 0..gee {
                    let c = (a * t1 + a2) * gee + nu;
                    for bb in 0..t0 {
                        let v = &db[(bb, a2)];
                        if !v.is_zero() {
                            d2[(mixed(a, bb, nu), c)] -= v;
                        }
                    }
                    let mut v = SparseVec::new();
                    expand_pair(&mm, &[(a, BigInt::one())], &[(a2, BigInt::one())], nu, &q1, &mut v);
                    for (i, x) in v {
                        d2[(i, c)] += x;
                    }
                }
            }
        }

        let ree = m.m_ee.presentation().relations;
        let copies = |k: usize| {
            let mut r = IntMatrix::zeros(k * gee, k * ree.cols());
            for i in 0..k {
                r.set_block(i * gee, i * ree.cols(), &ree);
            }
            r
        };
        let c0 = Presentation { generators: q0.len(), relations: q0.relations(m) };
        let c1 = Presentation { generators: n1, relations: q1.relations(m).block_diag(&copies(t1 * t0)) };
        let c2 = Presentation { generators: n2, relations: copies(t1 * t1) };
        debug_assert!(d1.mul(&d2).is_zero());
        Ok(DeltaComplex { module: m.clone(), resolution: b.clone(), c0, c1, c2, d1, d2, y1_basis: q1 })
    }

    pub fn for_group(b: &CanonicalGroup, m: &QuadraticZModule) -> Self {
        Self::new(&b.presentation(), m).expect("canonical presentations are resolutions")
    }

    /// `B ⊗ M = coker δ₁`, coordinates on `Y₀ ⊗ M`.
    pub fn tensor(&self) -> Subquotient {
        Subquotient::new(None, &self.d1.hstack(&self.c0.relations)).expect("cokernel")
    }

    /// `B ∗′ M`, coordinates on the middle term.
    pub fn torsion_prime(&self) -> Subquotient {
        presented_homology(&self.d2, &self.d1, &self.c1.relations, &self.c0.relations).expect("δ-complex")
    }

    /// `B ∗″ M = ker δ₂`, coordinates on the top term.
    pub fn torsion_double_prime(&self) -> Subquotient {
        presented_homology(
            &IntMatrix::zeros(self.c2.generators, 0),
            &self.d2,
            &self.c2.relations,
            &self.c1.relations,
        )
        .expect("δ-complex")
    }

    /// The complex as a chain complex in degrees 0, 1, 2 (free modules only).
    pub fn chain_complex(&self) -> Result<ChainComplex> {
        if !self.module.is_free() {
            return Err(Error::InvalidArgument("chain complex form needs free M_e and M_ee".into()));
        }
        ChainComplex::new(
            0,
            vec![self.c0.generators, self.c1.generators, self.c2.generators],
            vec![IntMatrix::zeros(0, self.c0.generators), self.d1.clone(), self.d2.clone()],
        )
    }

    /// Length of the `Y₁ ⊗ M` block inside the middle term.
    pub fn y1_block_len(&self) -> usize {
        self.y1_basis.len()
    }
}

/// `A ⊗ M`.
pub fn quad_tensor(a: &CanonicalGroup, m: &QuadraticZModule) -> CanonicalGroup {
    DeltaComplex::for_group(a, m).tensor().group().clone()
}

/// `(A ∗′ M, A ∗″ M)`.
pub fn quad_torsion(a: &CanonicalGroup, m: &QuadraticZModule) -> (CanonicalGroup, CanonicalGroup) {
    quad_torsion_of(&a.presentation(), m).expect("canonical presentation")
}

/// Torsion functors from an arbitrary free resolution.
pub fn quad_torsion_of(b: &Presentation, m: &QuadraticZModule) -> Result<(CanonicalGroup, CanonicalGroup)> {
    let d = DeltaComplex::new(b, m)?;
    Ok((d.torsion_prime().group().clone(), d.torsion_double_prime().group().clone()))
}

/// `f ⊗ M : A ⊗ M → A' ⊗ M` for `f` between presentations with injective relations.
pub fn quad_tensor_map(f: &Homomorphism, m: &QuadraticZModule) -> Result<Homomorphism> {
    let s = DeltaComplex::new(&f.domain, m)?.tensor();
    let t = DeltaComplex::new(&f.codomain, m)?.tensor();
    let mat = s.induced_matrix(&t, &quad_map(&f.gen_matrix, m))?;
    Homomorphism::between(s.group(), t.group(), mat)
}

/// `x ⊗ m` in `A ⊗ M` coordinates, where `x` is given in generator coordinates of `A`.
pub fn tensor_element(a: &CanonicalGroup, m: &QuadraticZModule, x: &[BigInt], mu: usize) -> Vec<BigInt> {
    let d = DeltaComplex::for_group(a, m);
    let q0 = QuadBasis::new(a.num_generators(), m);
    let mm = ModuleMaps::new(m);
    let terms: Vec<(usize, BigInt)> =
        x.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, v.clone())).collect();
    let mut v = SparseVec::new();
    super::qmap::expand_e(&mm, &terms, mu, &q0, &mut v);
    let mut dense = vec![BigInt::zero(); q0.len()];
    for (i, c) in v {
        dense[i] = c;
    }
    d.tensor().coords(&dense).expect("generator lies in Y₀⊗M")
}
