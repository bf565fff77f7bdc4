use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::value::{sq_nm, stable_sq, Case, SqValue};
use crate::abelian::{
    connecting_map, functor_subquotient, BinaryKind, CanonicalGroup, ExtClass, Homomorphism, IntMatrix,
};
use crate::chaincx::{moore_complex, pseudo_homology_with, ChainMap, Degree, HomotopyClasses, PseudoHomology};
use crate::doldkan::MSharp;
use crate::error::{Error, Result};
use crate::quadratic::{DeltaComplex, QuadraticZModule};

/// Both groups of an Ext class, which must be given by canonical presentations.
fn ext_groups(alpha: &ExtClass) -> Result<(CanonicalGroup, CanonicalGroup)> {
    let a = alpha.a.canonicalize();
    let b = alpha.b.canonicalize();
    if a.presentation() != alpha.a || b.presentation() != alpha.b {
        return Err(Error::InvalidArgument("Ext class must be over canonical presentations".into()));
    }
    Ok((a, b))
}

/// The map induced on a quotient of `Y₁ ⊗ M` (or `Y₀ ⊗ M`) by `Z^Γ → Z₂`,
/// `γ(e) ↦ e ⊗ 1` and brackets to zero, into the matching binary functor.
fn gamma_to_z2(a: &CanonicalGroup, kind: BinaryKind) -> Homomorphism {
    let pa = a.presentation();
    let delta = DeltaComplex::for_group(a, &QuadraticZModule::gamma());
    let (src, width) = match kind {
        BinaryKind::Tensor => (delta.tensor(), pa.generators),
        BinaryKind::Tor => (delta.torsion_prime(), pa.relations.cols()),
        _ => unreachable!("only ⊗ and ∗ receive the projection"),
    };
    let dst = functor_subquotient(kind, &pa, &CanonicalGroup::cyclic(2).presentation());
    let mut f = IntMatrix::zeros(dst.ambient(), src.ambient());
    for k in 0..width {
        f[(k, k)] = 1.into();
    }
    let m = src.induced_matrix(&dst, &f).expect("module map induces a map");
    Homomorphism::between(src.group(), dst.group(), m).expect("well defined")
}

/// `ν: R(A) → A∗Z₂`, induced by `Z^Γ → Z₂` on first derived functors.
pub fn nu(a: &CanonicalGroup) -> Homomorphism {
    gamma_to_z2(a, BinaryKind::Tor)
}

/// `Γ(A) → A⊗Z₂`, `γ(x) ↦ x ⊗ 1`.
pub fn gamma_reduction(a: &CanonicalGroup) -> Homomorphism {
    gamma_to_z2(a, BinaryKind::Tensor)
}

/// Places `blocks[(t, s)]` as the map from summand `s` to summand `t`.
fn summand_map(src: &SqValue, tgt: &SqValue, blocks: &[(usize, usize, &Homomorphism)]) -> Result<Homomorphism> {
    let (ps, pt) = (src.presentation(), tgt.presentation());
    let (os, ot) = (src.offsets(), tgt.offsets());
    let mut m = IntMatrix::zeros(pt.generators, ps.generators);
    for &(t, s, h) in blocks {
        if h.domain.canonicalize() != src.summands[s].group || h.codomain.canonicalize() != tgt.summands[t].group {
            return Err(Error::Dimension(format!(
                "block {} → {} does not match {} → {}",
                h.domain.canonicalize(),
                h.codomain.canonicalize(),
                src.summands[s].group,
                tgt.summands[t].group
            )));
        }
        m.set_block(ot[t], os[s], &h.gen_matrix);
    }
    Homomorphism::new(ps, pt, m)
}

/// `^k[n](α): H_{n+k}Λ₍#₎C(A,n) → H_{n+k}Λ₍#₎C(B,n+1)` for `α ∈ Ext(A, B)`.
///
/// Domain and codomain are the presentations of `sq_nm(Z, A, n+k, n)` and
/// `sq_nm(Z, B, n+k, n+1)`. With `A = Z` every `Ext(Z, −)` summand vanishes
/// and the remaining summand is identified with its coefficient group.
pub fn ext_induced(k: Degree, n: Degree, alpha: &ExtClass) -> Result<Homomorphism> {
    if n < 1 || k < 1 {
        return Err(Error::NotDefined(format!("^{k}[{n}]")));
    }
    let (a, b) = ext_groups(alpha)?;
    let z = CanonicalGroup::z();
    let src = sq_nm(&z, &a, n + k, n)?;
    let tgt = sq_nm(&z, &b, n + k, n + 1)?;
    if k % 2 == 1 {
        return Ok(Homomorphism::zero(&src.presentation(), &tgt.presentation()));
    }
    let z2 = CanonicalGroup::cyclic(2);
    let d = connecting_map(alpha, &z2)?;
    match (k, n) {
        (2, 1) => {
            debug_assert_eq!((Case::select(3, 1), Case::select(3, 2)), (Case::III, Case::VIII));
            let f = nu(&a).then(&d)?;
            summand_map(&src, &tgt, &[(0, 0, &f)])
        }
        (2, 2) | (2, 3) => summand_map(&src, &tgt, &[(1, 1, &d)]),
        _ => Err(Error::NotDefined(format!("^{k}[{n}] is only given for k odd or ^2[1], ^2[2], ^2[3]"))),
    }
}

/// `α_*: C(D,m) → C(D',m+1)` for `α ∈ Ext(D, D')`: the representative in degree `m+1`.
pub fn ext_chain_map(alpha: &ExtClass, m: Degree) -> Result<ChainMap> {
    let (d, d2) = ext_groups(alpha)?;
    let mut comps = BTreeMap::new();
    comps.insert(m + 1, alpha.representative.clone());
    ChainMap::new(moore_complex(&d, m), moore_complex(&d2, m + 1), comps)
}

/// The chain-level `Sq_{n,m}(A, D)` as pseudo-homology of `Λ₍#₎C(D,m)`.
pub fn sq_nm_chain(a: &CanonicalGroup, d: &CanonicalGroup, n: Degree, m: Degree) -> Result<PseudoHomology> {
    let t = usize::try_from(n + 2).map_err(|_| Error::InvalidArgument(format!("degree {n}")))?;
    let ms = MSharp::new(&moore_complex(d, m), &QuadraticZModule::lambda(), t)?;
    let y = ms.reduced_truncation()?;
    Ok(pseudo_homology_with(a, n, HomotopyClasses::new(&moore_complex(a, n), &y)))
}

/// A map between chain-level pseudo-homology groups with both ends.
#[derive(Clone, Debug)]
pub struct ShiftMap {
    pub map: Homomorphism,
    pub source: PseudoHomology,
    pub target: PseudoHomology,
}

/// `{n,m}(α): Sq_{n,m}(A, D) → Sq_{n,m+1}(A, D')` for `α ∈ Ext(D, D')`,
/// computed on chain level as `[C(A,n), Λ₍#₎(α_*)]` in the coordinates of
/// the chain-level pseudo-homology groups.
pub fn shift_map(n: Degree, m: Degree, alpha: &ExtClass, a: &CanonicalGroup) -> Result<ShiftMap> {
    if m < 1 || n < 0 {
        return Err(Error::InvalidArgument(format!("shift map needs m ≥ 1 and n ≥ 0, got n={n}, m={m}")));
    }
    let (d, d2) = ext_groups(alpha)?;
    let f = ext_chain_map(alpha, m)?;
    let t = (n + 2) as usize;
    let l = QuadraticZModule::lambda();
    let ms = MSharp::new(&moore_complex(&d, m), &l, t)?;
    let mt = MSharp::new(&moore_complex(&d2, m + 1), &l, t)?;
    let (rs, rt) = (ms.reduce()?, mt.reduce()?);
    let g = ms.induced_truncation(&f, &mt, &rs, &rt)?;
    let c = moore_complex(a, n);
    let hs = HomotopyClasses::new(&c, &g.source);
    let ht = HomotopyClasses::new(&c, &g.target);
    let gs = hs.group().num_generators();
    let mut cols = Vec::with_capacity(gs);
    for i in 0..gs {
        let mut e = vec![BigInt::zero(); gs];
        e[i] = 1.into();
        let comp = hs.representative(&e).then(&g)?;
        cols.push(ht.class_of(&comp)?);
    }
    let map = Homomorphism::between(hs.group(), ht.group(), IntMatrix::from_columns(ht.group().num_generators(), &cols))?;
    Ok(ShiftMap { map, source: pseudo_homology_with(a, n, hs), target: pseudo_homology_with(a, n, ht) })
}

/// Σ^∞ on `Sq_{n,m}(Z, D) → Sq^stable_{n−m}(Z, D)` between summand presentations.
///
/// Identity on matched summands, `ν` on `R(D)`, `γ(x) ↦ x⊗1` on `Γ(D)`,
/// zero on `Λ²` and `Ω` parts.
pub fn stabilization_map(d: &CanonicalGroup, n: Degree, m: Degree) -> Result<Homomorphism> {
    let k = n - m;
    let z = CanonicalGroup::z();
    let src = sq_nm(&z, d, n, m)?;
    let tgt = stable_sq(&z, d, k)?;
    let id = |s: usize, t: usize| Homomorphism::identity(&src.summands[s].group.presentation()).then_into(&tgt.summands[t].group);
    match Case::select(n, m) {
        Case::V | Case::VI => summand_map(&src, &tgt, &[(0, 0, &id(0, 0)?), (1, 1, &id(1, 1)?)]),
        Case::VII | Case::IX => summand_map(&src, &tgt, &[(1, 1, &id(1, 1)?)]),
        Case::VIII => summand_map(&src, &tgt, &[(1, 0, &id(0, 1)?)]),
        Case::X => summand_map(&src, &tgt, &[(1, 0, &gamma_reduction(d))]),
        Case::III => summand_map(&src, &tgt, &[(1, 0, &nu(d))]),
        Case::IV | Case::XI => Ok(Homomorphism::zero(&src.presentation(), &tgt.presentation())),
        Case::I | Case::II => unreachable!("k ≥ 1 by stable_sq"),
    }
}

impl Homomorphism {
    /// The same matrix read into an equal canonical group.
    fn then_into(&self, g: &CanonicalGroup) -> Result<Homomorphism> {
        if self.codomain.canonicalize() != *g {
            return Err(Error::Dimension(format!("{} is not {}", self.codomain.canonicalize(), g)));
        }
        Homomorphism::new(self.domain.clone(), g.presentation(), self.gen_matrix.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(d: u64) -> CanonicalGroup {
        CanonicalGroup::cyclic(d)
    }

    fn nonzero_ext(a: &CanonicalGroup, b: &CanonicalGroup) -> ExtClass {
        ExtClass::all(a, b).unwrap().into_iter().find(|e| !e.is_zero()).unwrap()
    }

    #[test]
    fn square_three_is_connecting_map() {
        let alpha = nonzero_ext(&c(2), &c(2));
        let h = ext_induced(2, 3, &alpha).unwrap();
        assert!(h.is_isomorphism());
        let zero = ExtClass::zero(&c(2), &c(2));
        assert!(ext_induced(2, 2, &zero).unwrap().is_zero());
        assert!(ext_induced(3, 3, &alpha).unwrap().is_zero());
        assert!(matches!(ext_induced(4, 2, &alpha), Err(Error::NotDefined(_))));
    }

    #[test]
    fn nu_and_gamma_reduction() {
        // R(Z/2) = Z/2 and ν is onto Z/2 ∗ Z/2 = Z/2; Γ(Z/2) = Z/4 → Z/2 is onto.
        assert!(nu(&c(2)).is_surjective());
        assert!(gamma_reduction(&c(2)).is_surjective());
        assert!(gamma_reduction(&CanonicalGroup::z()).is_surjective());
    }

    #[test]
    fn shift_map_over_z_matches_square() {
        let alpha = nonzero_ext(&c(2), &c(2));
        let z = CanonicalGroup::z();
        for (k, n) in [(2, 1), (2, 2), (2, 3), (3, 2), (3, 3)] {
            let s = shift_map(n + k, n, &alpha, &z).unwrap();
            let e = ext_induced(k, n, &alpha).unwrap();
            assert_eq!(s.map.is_zero(), e.is_zero(), "^{k}[{n}]");
        }
    }

    #[test]
    fn stabilization_is_identity_in_stable_range() {
        for d in [c(2), c(4), CanonicalGroup::z()] {
            assert!(stabilization_map(&d, 5, 4).unwrap().is_isomorphism());
            assert!(stabilization_map(&d, 4, 2).unwrap().is_surjective());
        }
    }
}
