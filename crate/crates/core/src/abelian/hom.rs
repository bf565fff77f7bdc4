use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::group::{CanonicalGroup, Presentation};
use super::lattice::{in_lattice, presented_homology, solve_matrix, Subquotient};
use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// A homomorphism between presented groups, given on generators.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Homomorphism {
    pub domain: Presentation,
    pub codomain: Presentation,
    pub gen_matrix: IntMatrix,
}

impl Homomorphism {
    pub fn new(domain: Presentation, codomain: Presentation, gen_matrix: IntMatrix) -> Result<Self> {
        if gen_matrix.rows() != codomain.generators || gen_matrix.cols() != domain.generators {
            return Err(Error::Dimension(format!(
                "generator matrix is {}x{}, expected {}x{}",
                gen_matrix.rows(),
                gen_matrix.cols(),
                codomain.generators,
                domain.generators
            )));
        }
        let image = gen_matrix.mul(&domain.relations);
        if !in_lattice(&codomain.relations, &image) {
            return Err(Error::IllFormed("domain relations do not map into codomain relations".into()));
        }
        Ok(Homomorphism { domain, codomain, gen_matrix })
    }

    /// Map between canonical groups; entries are reduced into normal form.
    pub fn between(a: &CanonicalGroup, b: &CanonicalGroup, m: IntMatrix) -> Result<Self> {
        let mut h = Self::new(a.presentation(), b.presentation(), m)?;
        h.reduce_canonical(b);
        Ok(h)
    }

    fn reduce_canonical(&mut self, b: &CanonicalGroup) {
        for j in 0..self.gen_matrix.cols() {
            let col = b.reduce(&self.gen_matrix.column(j));
            for (i, v) in col.into_iter().enumerate() {
                self.gen_matrix[(i, j)] = v;
            }
        }
    }

    pub fn identity(p: &Presentation) -> Self {
        Homomorphism { domain: p.clone(), codomain: p.clone(), gen_matrix: IntMatrix::identity(p.generators) }
    }

    pub fn zero(domain: &Presentation, codomain: &Presentation) -> Self {
        Homomorphism {
            domain: domain.clone(),
            codomain: codomain.clone(),
            gen_matrix: IntMatrix::zeros(codomain.generators, domain.generators),
        }
    }

    pub fn zero_between(a: &CanonicalGroup, b: &CanonicalGroup) -> Self {
        Self::zero(&a.presentation(), &b.presentation())
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Homomorphism) -> Result<Homomorphism> {
        if self.codomain.generators != other.domain.generators {
            return Err(Error::Dimension("composition of incompatible maps".into()));
        }
        Ok(Homomorphism {
            domain: self.domain.clone(),
            codomain: other.codomain.clone(),
            gen_matrix: other.gen_matrix.mul(&self.gen_matrix),
        })
    }

    pub fn add(&self, other: &Homomorphism) -> Result<Homomorphism> {
        if self.gen_matrix.rows() != other.gen_matrix.rows() || self.gen_matrix.cols() != other.gen_matrix.cols() {
            return Err(Error::Dimension("sum of maps with different shapes".into()));
        }
        Ok(Homomorphism {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            gen_matrix: self.gen_matrix.add(&other.gen_matrix),
        })
    }

    pub fn scale(&self, c: &BigInt) -> Homomorphism {
        Homomorphism { gen_matrix: self.gen_matrix.scale(c), ..self.clone() }
    }

    /// Equality modulo the codomain relation lattice.
    pub fn equals(&self, other: &Homomorphism) -> bool {
        self.gen_matrix.rows() == other.gen_matrix.rows()
            && self.gen_matrix.cols() == other.gen_matrix.cols()
            && in_lattice(&self.codomain.relations, &self.gen_matrix.sub(&other.gen_matrix))
    }

    pub fn is_zero(&self) -> bool {
        in_lattice(&self.codomain.relations, &self.gen_matrix)
    }

    /// Image of a domain element (generator coordinates).
    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.gen_matrix.mul_vec(x)
    }

    pub fn kernel(&self) -> Subquotient {
        presented_homology(
            &IntMatrix::zeros(self.domain.generators, 0),
            &self.gen_matrix,
            &self.domain.relations,
            &self.codomain.relations,
        )
        .expect("kernel of a well-formed map")
    }

    pub fn image_group(&self) -> CanonicalGroup {
        Subquotient::from_generators(&self.gen_matrix, &self.codomain.relations)
            .expect("image of a well-formed map")
            .group()
            .clone()
    }

    pub fn cokernel(&self) -> Presentation {
        Presentation {
            generators: self.codomain.generators,
            relations: self.gen_matrix.hstack(&self.codomain.relations),
        }
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().group().is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().canonicalize().is_trivial()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// A lift `f₁` with `R_cod · f₁ = gen_matrix · R_dom`.
    pub fn relation_lift(&self) -> IntMatrix {
        let target = self.gen_matrix.mul(&self.domain.relations);
        if target.cols() == 0 {
            return IntMatrix::zeros(self.codomain.relations.cols(), 0);
        }
        solve_matrix(&self.codomain.relations, &target).expect("well-formed homomorphism has a relation lift")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ill_formed_rejected() {
        let z2 = CanonicalGroup::cyclic(2);
        let z4 = CanonicalGroup::cyclic(4);
        // 1 ↦ 1 from Z/2 to Z/4 does not respect 2·1 = 0
        assert!(Homomorphism::between(&z2, &z4, IntMatrix::from_rows(&[vec![1]])).is_err());
        let h = Homomorphism::between(&z2, &z4, IntMatrix::from_rows(&[vec![2]])).unwrap();
        assert!(h.is_injective());
        assert!(!h.is_surjective());
    }
}
