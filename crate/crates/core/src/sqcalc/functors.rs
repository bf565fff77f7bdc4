use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::abelian::{binary_functor, BinaryKind, CanonicalGroup, Homomorphism};
use crate::chaincx::{moore_complex, pseudo_homology, tensor_complex, PseudoHomology};
use crate::error::{Error, Result};
use crate::quadratic::{gamma, l_module, lambda2, omega, quad_tensor, r_functor, DeltaComplex, QuadraticZModule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BypeKind {
    LambdaT,
    GammaT,
    LSharp,
}

impl FromStr for BypeKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lambda_t" | "lambdaT" => Ok(BypeKind::LambdaT),
            "gamma_t" | "gammaT" => Ok(BypeKind::GammaT),
            "lsharp" | "Lsharp" => Ok(BypeKind::LSharp),
            _ => Err(Error::InvalidArgument(format!("unknown bype functor '{s}'"))),
        }
    }
}

/// A bype functor value with its sequence `Ext ↣ value ↠ Hom`.
///
/// `sequence` holds the chain-level pseudo-homology when the value was
/// computed as one; `L#` is computed as a quadratic tensor product and
/// carries only the end groups.
#[derive(Clone, Debug)]
pub struct BypeValue {
    pub group: CanonicalGroup,
    pub ext: CanonicalGroup,
    pub hom: CanonicalGroup,
    pub sequence: Option<PseudoHomology>,
}

impl BypeValue {
    pub fn delta(&self) -> Option<&Homomorphism> {
        self.sequence.as_ref().map(|p| &p.delta)
    }

    pub fn mu(&self) -> Option<&Homomorphism> {
        self.sequence.as_ref().map(|p| &p.mu)
    }

    /// `|value| = |Ext|·|Hom|`, vacuous for infinite values.
    pub fn orders_consistent(&self) -> bool {
        match (self.group.order(), self.ext.order(), self.hom.order()) {
            (Some(g), Some(e), Some(h)) => g == e * h,
            _ => self.group.free_rank == self.hom.free_rank + self.ext.free_rank,
        }
    }

    fn from_pseudo(p: PseudoHomology) -> Self {
        BypeValue { group: p.group().clone(), ext: p.ext.clone(), hom: p.hom.clone(), sequence: Some(p) }
    }
}

fn delta_complex_value(a: &CanonicalGroup, b: &CanonicalGroup, m: &QuadraticZModule) -> BypeValue {
    let y = DeltaComplex::for_group(b, m).chain_complex().expect("constant modules are free");
    BypeValue::from_pseudo(pseudo_homology(a, 0, &y))
}

pub fn bype_functor(kind: BypeKind, a: &CanonicalGroup, b: &CanonicalGroup) -> BypeValue {
    let v = match kind {
        BypeKind::LambdaT => delta_complex_value(a, b, &QuadraticZModule::lambda()),
        BypeKind::GammaT => delta_complex_value(a, b, &QuadraticZModule::gamma()),
        BypeKind::LSharp => BypeValue {
            group: quad_tensor(b, &l_module(a)),
            ext: binary_functor(BinaryKind::Ext, a, &lambda2(b)),
            hom: binary_functor(BinaryKind::Hom, a, &binary_functor(BinaryKind::Tensor, b, &CanonicalGroup::cyclic(2))),
            sequence: None,
        },
    };
    debug_assert!(v.orders_consistent(), "{kind:?}({a}, {b}) = {} against {} / {}", v.group, v.ext, v.hom);
    v
}

/// The end groups of the bype sequence, from closed forms.
pub fn bype_ends(kind: BypeKind, a: &CanonicalGroup, b: &CanonicalGroup) -> (CanonicalGroup, CanonicalGroup) {
    let z2 = CanonicalGroup::cyclic(2);
    let (e, h) = match kind {
        BypeKind::LambdaT => (omega(b), lambda2(b)),
        BypeKind::GammaT => (r_functor(b), gamma(b)),
        BypeKind::LSharp => (lambda2(b), binary_functor(BinaryKind::Tensor, b, &z2)),
    };
    (binary_functor(BinaryKind::Ext, a, &e), binary_functor(BinaryKind::Hom, a, &h))
}

/// `Trp(A; B, C) = [d_A, d_B ⊗ d_C]`.
pub fn trp(a: &CanonicalGroup, b: &CanonicalGroup, c: &CanonicalGroup) -> BypeValue {
    let y = tensor_complex(&moore_complex(b, 0), &moore_complex(c, 0));
    let v = BypeValue::from_pseudo(pseudo_homology(a, 0, &y));
    debug_assert!(v.orders_consistent());
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::int;

    fn c(d: u64) -> CanonicalGroup {
        CanonicalGroup::cyclic(d)
    }

    #[test]
    fn gamma_t_over_z_is_gamma() {
        for d in [c(2), c(4), CanonicalGroup::z(), c(6)] {
            let v = bype_functor(BypeKind::GammaT, &CanonicalGroup::z(), &d);
            assert_eq!(v.group, gamma(&d));
            assert!(v.ext.is_trivial());
        }
    }

    #[test]
    fn lambda_t_order() {
        let v = bype_functor(BypeKind::LambdaT, &c(2), &c(4));
        assert_eq!(v.group.order(), Some(int(2)));
        assert_eq!(bype_ends(BypeKind::LambdaT, &c(2), &c(4)), (v.ext.clone(), v.hom.clone()));
    }

    #[test]
    fn l_sharp_over_z() {
        for d in [c(2), c(3), CanonicalGroup::z()] {
            let v = bype_functor(BypeKind::LSharp, &CanonicalGroup::z(), &d);
            assert_eq!(v.group, binary_functor(BinaryKind::Tensor, &d, &c(2)));
        }
    }

    #[test]
    fn trp_examples() {
        assert_eq!(trp(&c(2), &c(2), &c(4)).group.order(), Some(int(4)));
        let z = CanonicalGroup::z();
        assert_eq!(trp(&z, &c(4), &c(6)).group, c(2));
        assert!(trp(&c(2), &z, &c(3)).group.is_trivial());
    }
}
