use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::delta::{quad_tensor, quad_torsion, DeltaComplex};
use super::module::QuadraticZModule;
use super::qmap::quad_map;
use crate::abelian::lattice::presented_homology;
use crate::abelian::matrix::IntMatrix;
use crate::abelian::{binary_functor, BinaryKind, CanonicalGroup};
use crate::chaincx::GradedGroup;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassicalKind {
    Lambda2,
    Gamma,
    Sp2,
    TensorSquare,
    TensorZ2,
    Omega,
    R,
}

impl ClassicalKind {
    pub const ALL: [ClassicalKind; 7] = [
        ClassicalKind::Lambda2,
        ClassicalKind::Gamma,
        ClassicalKind::Sp2,
        ClassicalKind::TensorSquare,
        ClassicalKind::TensorZ2,
        ClassicalKind::Omega,
        ClassicalKind::R,
    ];
}

impl FromStr for ClassicalKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "lambda2" => ClassicalKind::Lambda2,
            "gamma" => ClassicalKind::Gamma,
            "sp2" => ClassicalKind::Sp2,
            "tensor_square" => ClassicalKind::TensorSquare,
            "tensor_z2" => ClassicalKind::TensorZ2,
            "omega" => ClassicalKind::Omega,
            "r" => ClassicalKind::R,
            _ => return Err(Error::InvalidArgument(format!("unknown quadratic functor '{s}'"))),
        })
    }
}

pub fn classical(kind: ClassicalKind, a: &CanonicalGroup) -> CanonicalGroup {
    match kind {
        ClassicalKind::Lambda2 => quad_tensor(a, &QuadraticZModule::lambda()),
        ClassicalKind::Gamma => quad_tensor(a, &QuadraticZModule::gamma()),
        ClassicalKind::Sp2 => quad_tensor(a, &QuadraticZModule::sym()),
        ClassicalKind::TensorSquare => quad_tensor(a, &QuadraticZModule::tensor_square()),
        ClassicalKind::TensorZ2 => quad_tensor(a, &QuadraticZModule::z2()),
        ClassicalKind::Omega => quad_torsion(a, &QuadraticZModule::lambda()).0,
        ClassicalKind::R => quad_torsion(a, &QuadraticZModule::gamma()).0,
    }
}

pub fn lambda2(a: &CanonicalGroup) -> CanonicalGroup {
    classical(ClassicalKind::Lambda2, a)
}

pub fn gamma(a: &CanonicalGroup) -> CanonicalGroup {
    classical(ClassicalKind::Gamma, a)
}

pub fn omega(a: &CanonicalGroup) -> CanonicalGroup {
    classical(ClassicalKind::Omega, a)
}

pub fn r_functor(a: &CanonicalGroup) -> CanonicalGroup {
    classical(ClassicalKind::R, a)
}

fn pairwise_gcds(t: &[BigInt]) -> Vec<BigInt> {
    let mut out = Vec::new();
    for i in 0..t.len() {
        for j in i + 1..t.len() {
            out.push(t[i].gcd(&t[j]));
        }
    }
    out
}

/// `Ω` from cyclic summands: `Ω(Z/n) = Z/n`, `Ω(Z) = 0`, cross-effect `A∗B`.
pub fn omega_closed(a: &CanonicalGroup) -> CanonicalGroup {
    let mut o = a.torsion.clone();
    o.extend(pairwise_gcds(&a.torsion));
    CanonicalGroup::from_orders(0, &o)
}

/// `R` from cyclic summands: `R(Z/n) = Z/(2,n)`, `R(Z) = 0`, cross-effect `A∗B`.
pub fn r_closed(a: &CanonicalGroup) -> CanonicalGroup {
    let two = BigInt::from(2);
    let mut o: Vec<BigInt> = a.torsion.iter().map(|d| d.gcd(&two)).collect();
    o.extend(pairwise_gcds(&a.torsion));
    CanonicalGroup::from_orders(0, &o)
}

/// `F(A|B) = ker(F(A⊕B) → F(A) ⊕ F(B))` for `F = − ⊗ M`.
pub fn cross_effect(m: &QuadraticZModule, a: &CanonicalGroup, b: &CanonicalGroup) -> CanonicalGroup {
    let (pa, pb) = (a.presentation(), b.presentation());
    let pab = pa.direct_sum(&pb);
    let (ga, gb) = (pa.generators, pb.generators);
    let mut r1 = IntMatrix::zeros(ga, ga + gb);
    r1.set_block(0, 0, &IntMatrix::identity(ga));
    let mut r2 = IntMatrix::zeros(gb, ga + gb);
    r2.set_block(0, ga, &IntMatrix::identity(gb));
    let dab = DeltaComplex::new(&pab, m).expect("resolution");
    let da = DeltaComplex::new(&pa, m).expect("resolution");
    let db = DeltaComplex::new(&pb, m).expect("resolution");
    let f = quad_map(&r1, m).vstack(&quad_map(&r2, m));
    let src_rel = dab.d1.hstack(&dab.c0.relations);
    let tgt_rel = da.d1.hstack(&da.c0.relations).block_diag(&db.d1.hstack(&db.c0.relations));
    presented_homology(&IntMatrix::zeros(f.cols(), 0), &f, &src_rel, &tgt_rel)
        .expect("retraction map is well defined")
        .group()
        .clone()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SquareKind {
    Tensor,
    Torsion,
}

/// `Sq^⊗(B)` or `Sq^★(B)`: ordered products over `i > j ≥ 1` against
/// `B ⊕ (Z₂)_odd`, plus the diagonal part in degree `2m`
/// (`Γ`/`Λ²` for `⊗` with `m` odd/even, `R`/`Ω` for `★` with `m` odd/even).
pub fn graded_square(kind: SquareKind, b: &GradedGroup) -> Result<GradedGroup> {
    if let Some(lo) = b.min_degree() {
        if lo <= 0 {
            return Err(Error::InvalidArgument(format!("square functors need degrees ≥ 1, got {lo}")));
        }
    }
    let Some(hi) = b.max_degree() else { return Ok(GradedGroup::new()) };
    let z2 = CanonicalGroup::cyclic(2);
    let bin = match kind {
        SquareKind::Tensor => BinaryKind::Tensor,
        SquareKind::Torsion => BinaryKind::Tor,
    };
    let mut out = GradedGroup::new();
    for n in 2..=2 * hi {
        let mut g = CanonicalGroup::trivial();
        for j in 1..n {
            let i = n - j;
            if i <= j {
                break;
            }
            let bi = b.get(i);
            g = g.direct_sum(&binary_functor(bin, &bi, &b.get(j)));
            if j % 2 == 1 {
                g = g.direct_sum(&binary_functor(bin, &bi, &z2));
            }
        }
        if n % 2 == 0 {
            let m = n / 2;
            let bm = b.get(m);
            let diag = match (kind, m % 2 == 1) {
                (SquareKind::Tensor, true) => gamma(&bm),
                (SquareKind::Tensor, false) => lambda2(&bm),
                (SquareKind::Torsion, true) => r_functor(&bm),
                (SquareKind::Torsion, false) => omega(&bm),
            };
            g = g.direct_sum(&diag);
        }
        out.set(n, g);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::int;

    #[test]
    fn classical_values() {
        assert_eq!(lambda2(&CanonicalGroup::free(3)), CanonicalGroup::free(3));
        assert_eq!(omega(&CanonicalGroup::cyclic(6)), CanonicalGroup::cyclic(6));
        assert!(r_functor(&CanonicalGroup::z()).is_trivial());
        assert_eq!(
            classical(ClassicalKind::TensorSquare, &CanonicalGroup::from_orders(1, &[int(2)])),
            CanonicalGroup::from_orders(1, &[int(2), int(2), int(2)])
        );
    }

    #[test]
    fn cross_effects() {
        let z = CanonicalGroup::z();
        assert_eq!(cross_effect(&QuadraticZModule::lambda(), &z, &z), z);
        assert!(cross_effect(&QuadraticZModule::gamma(), &CanonicalGroup::trivial(), &z).is_trivial());
    }

    #[test]
    fn squares() {
        let b = GradedGroup::single(1, CanonicalGroup::z());
        let s = graded_square(SquareKind::Tensor, &b).unwrap();
        assert_eq!(s.get(2), CanonicalGroup::z());
        let z2 = CanonicalGroup::cyclic(2);
        let b = GradedGroup::from_pairs([(1, z2.clone()), (3, z2.clone())]);
        let s = graded_square(SquareKind::Tensor, &b).unwrap();
        assert_eq!(s.get(4), CanonicalGroup::from_orders(0, &[int(2), int(2)]));
        assert!(graded_square(SquareKind::Tensor, &GradedGroup::single(0, z2)).is_err());
    }
}
