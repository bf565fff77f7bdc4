use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::abelian::functor::{functor_subquotient, BinaryKind};
use crate::abelian::matrix::IntMatrix;
use crate::abelian::{CanonicalGroup, Homomorphism};
use crate::error::{Error, Result};

/// A quadratic Z-module `M_e →H M_ee →P M_e` with `HPH = 2H`, `PHP = 2P`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuadraticZModule {
    pub m_e: CanonicalGroup,
    pub m_ee: CanonicalGroup,
    pub h: Homomorphism,
    pub p: Homomorphism,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NamedModule {
    Tensor,
    Lambda,
    Gamma,
    Sym,
    Z2,
}

impl FromStr for NamedModule {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tensor" | "Z^tensor" => Ok(NamedModule::Tensor),
            "lambda" | "Z^Lambda" => Ok(NamedModule::Lambda),
            "gamma" | "Z^Gamma" => Ok(NamedModule::Gamma),
            "sym" | "Z^S" => Ok(NamedModule::Sym),
            "z2" | "Z2" => Ok(NamedModule::Z2),
            _ => Err(Error::InvalidArgument(format!("unknown quadratic module '{s}'"))),
        }
    }
}

impl QuadraticZModule {
    pub fn new(m_e: CanonicalGroup, m_ee: CanonicalGroup, h: IntMatrix, p: IntMatrix) -> Result<Self> {
        let h = Homomorphism::between(&m_e, &m_ee, h).map_err(|e| Error::InvalidModule(format!("H: {e}")))?;
        let p = Homomorphism::between(&m_ee, &m_e, p).map_err(|e| Error::InvalidModule(format!("P: {e}")))?;
        let two = BigInt::from(2);
        let hph = h.then(&p)?.then(&h)?;
        if !hph.equals(&h.scale(&two)) {
            return Err(Error::InvalidModule("HPH ≠ 2H".into()));
        }
        let php = p.then(&h)?.then(&p)?;
        if !php.equals(&p.scale(&two)) {
            return Err(Error::InvalidModule("PHP ≠ 2P".into()));
        }
        Ok(QuadraticZModule { m_e, m_ee, h, p })
    }

    pub fn named(n: NamedModule) -> Self {
        match n {
            NamedModule::Tensor => Self::tensor_square(),
            NamedModule::Lambda => Self::lambda(),
            NamedModule::Gamma => Self::gamma(),
            NamedModule::Sym => Self::sym(),
            NamedModule::Z2 => Self::z2(),
        }
    }

    /// `Z^⊗ = (Z →(1,1) Z⊕Z →(1,1) Z)`.
    pub fn tensor_square() -> Self {
        Self::new(
            CanonicalGroup::z(),
            CanonicalGroup::free(2),
            IntMatrix::from_rows(&[vec![1], vec![1]]),
            IntMatrix::from_rows(&[vec![1, 1]]),
        )
        .expect("constant module")
    }

    /// `Z^Λ = (0 → Z → 0)`.
    pub fn lambda() -> Self {
        Self::new(CanonicalGroup::trivial(), CanonicalGroup::z(), IntMatrix::zeros(1, 0), IntMatrix::zeros(0, 1))
            .expect("constant module")
    }

    /// `Z^Γ = (Z →1 Z →2 Z)`.
    pub fn gamma() -> Self {
        Self::new(
            CanonicalGroup::z(),
            CanonicalGroup::z(),
            IntMatrix::from_rows(&[vec![1]]),
            IntMatrix::from_rows(&[vec![2]]),
        )
        .expect("constant module")
    }

    /// `Z^S = (Z →2 Z →1 Z)`.
    pub fn sym() -> Self {
        Self::new(
            CanonicalGroup::z(),
            CanonicalGroup::z(),
            IntMatrix::from_rows(&[vec![2]]),
            IntMatrix::from_rows(&[vec![1]]),
        )
        .expect("constant module")
    }

    /// `Z₂ = (Z/2 → 0 → Z/2)`.
    pub fn z2() -> Self {
        Self::new(CanonicalGroup::cyclic(2), CanonicalGroup::trivial(), IntMatrix::zeros(0, 1), IntMatrix::zeros(1, 0))
            .expect("constant module")
    }

    pub fn is_free(&self) -> bool {
        self.m_e.torsion.is_empty() && self.m_ee.torsion.is_empty()
    }

    pub fn ge(&self) -> usize {
        self.m_e.num_generators()
    }

    pub fn gee(&self) -> usize {
        self.m_ee.num_generators()
    }
}

/// `L(A) = (Hom(A,Z₂) →∂ Ext(A,Z) →0 Hom(A,Z₂))` with `∂` the connecting
/// map of `Z →2 Z ↠ Z₂`.
pub fn l_module(a: &CanonicalGroup) -> QuadraticZModule {
    let pa = a.presentation();
    let z2 = CanonicalGroup::cyclic(2).presentation();
    let hom = functor_subquotient(BinaryKind::Hom, &pa, &z2);
    let ext = functor_subquotient(BinaryKind::Ext, &pa, &CanonicalGroup::z().presentation());
    let mut cols = Vec::new();
    for k in 0..hom.group().num_generators() {
        // lift to X₀ → Z, restrict along d_A, halve
        let v = hom.generator(k);
        let lifted: Vec<BigInt> = (0..pa.relations.cols())
            .map(|l| {
                let s: BigInt = (0..pa.generators).map(|i| &v[i] * &pa.relations[(i, l)]).sum();
                debug_assert!((&s % 2u32).is_zero());
                s / 2
            })
            .collect();
        cols.push(ext.coords(&lifted).expect("Ext(A,Z) is a quotient of Hom(X₁,Z)"));
    }
    let m_e = hom.group().clone();
    let m_ee = ext.group().clone();
    let h = IntMatrix::from_columns(m_ee.num_generators(), &cols);
    let p = IntMatrix::zeros(m_e.num_generators(), m_ee.num_generators());
    QuadraticZModule::new(m_e, m_ee, h, p).expect("L(A) satisfies the quadratic module identities")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_validate() {
        for n in [NamedModule::Tensor, NamedModule::Lambda, NamedModule::Gamma, NamedModule::Sym, NamedModule::Z2] {
            let _ = QuadraticZModule::named(n);
        }
        let bad = QuadraticZModule::new(
            CanonicalGroup::z(),
            CanonicalGroup::z(),
            IntMatrix::from_rows(&[vec![1]]),
            IntMatrix::from_rows(&[vec![1]]),
        );
        assert!(matches!(bad, Err(Error::InvalidModule(_))));
    }

    #[test]
    fn l_modules() {
        let l = l_module(&CanonicalGroup::cyclic(2));
        assert_eq!(l.m_e, CanonicalGroup::cyclic(2));
        assert_eq!(l.m_ee, CanonicalGroup::cyclic(2));
        assert!(l.h.is_isomorphism());
        let l = l_module(&CanonicalGroup::z());
        assert_eq!(l.m_e, CanonicalGroup::cyclic(2));
        assert!(l.m_ee.is_trivial());
        let l = l_module(&CanonicalGroup::cyclic(3));
        assert!(l.m_e.is_trivial());
        assert_eq!(l.m_ee, CanonicalGroup::cyclic(3));
    }
}
