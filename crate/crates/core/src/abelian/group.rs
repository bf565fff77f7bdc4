use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::lattice::Subquotient;
use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// A finitely generated abelian group `Z^r ⊕ Z/d₁ ⊕ … ⊕ Z/d_k` with
/// `d₁ | d₂ | … | d_k` and every `dᵢ ≥ 2`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
pub struct CanonicalGroup {
    pub free_rank: usize,
    #[serde(with = "bigint_strings")]
    pub torsion: Vec<BigInt>,
}

mod bigint_strings {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_string()))
    }
    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let v: Vec<String> = Vec::deserialize(d)?;
        v.iter().map(|s| s.parse::<BigInt>().map_err(serde::de::Error::custom)).collect()
    }
}

impl CanonicalGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(r: usize) -> Self {
        CanonicalGroup { free_rank: r, torsion: vec![] }
    }

    pub fn z() -> Self {
        Self::free(1)
    }

    pub fn cyclic(d: u64) -> Self {
        Self::from_orders(0, &[BigInt::from(d)])
    }

    /// Normalizes an arbitrary list of cyclic orders (0 meaning Z, 1 dropped).
    pub fn from_orders(free_rank: usize, orders: &[BigInt]) -> Self {
        let mut free = free_rank;
        let mut fin = Vec::new();
        for o in orders {
            let o = o.abs();
            if o.is_zero() {
                free += 1;
            } else if !o.is_one() {
                fin.push(o);
            }
        }
        let torsion = super::snf::normalize_diagonal(fin).into_iter().filter(|d| !d.is_one()).collect();
        CanonicalGroup { free_rank: free, torsion }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion_order())
    }

    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().fold(BigInt::one(), |a, b| a * b)
    }

    /// Number of generators of the canonical presentation.
    pub fn num_generators(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    /// Order of the i-th canonical generator; 0 for free generators.
    pub fn generator_order(&self, i: usize) -> BigInt {
        if i < self.free_rank {
            BigInt::zero()
        } else {
            self.torsion[i - self.free_rank].clone()
        }
    }

    pub fn orders(&self) -> Vec<BigInt> {
        (0..self.num_generators()).map(|i| self.generator_order(i)).collect()
    }

    pub fn direct_sum(&self, other: &CanonicalGroup) -> CanonicalGroup {
        let mut t = self.torsion.clone();
        t.extend(other.torsion.iter().cloned());
        Self::from_orders(self.free_rank + other.free_rank, &t)
    }

    pub fn sum_all<'a>(it: impl IntoIterator<Item = &'a CanonicalGroup>) -> CanonicalGroup {
        it.into_iter().fold(Self::trivial(), |a, b| a.direct_sum(b))
    }

    /// The presentation with one generator per invariant factor, free
    /// generators first; its relation matrix is injective.
    pub fn presentation(&self) -> Presentation {
        let g = self.num_generators();
        let mut r = IntMatrix::zeros(g, self.torsion.len());
        for (i, d) in self.torsion.iter().enumerate() {
            r[(self.free_rank + i, i)] = d.clone();
        }
        Presentation { generators: g, relations: r }
    }

    /// Reduces a coordinate vector into normal form (torsion entries in `[0, d)`).
    pub fn reduce(&self, x: &[BigInt]) -> Vec<BigInt> {
        x.iter()
            .enumerate()
            .map(|(i, v)| {
                let o = self.generator_order(i);
                if o.is_zero() {
                    v.clone()
                } else {
                    v.mod_floor(&o)
                }
            })
            .collect()
    }

    /// Invariants 2-rank of `G ⊗ Z/2`.
    pub fn rank_mod2(&self) -> usize {
        self.free_rank + self.torsion.iter().filter(|d| d.is_even()).count()
    }

    /// Canonical generator indices whose order is even (the 2-torsion part).
    pub fn even_torsion_indices(&self) -> Vec<usize> {
        (self.free_rank..self.num_generators()).filter(|&i| self.generator_order(i).is_even()).collect()
    }

    /// Canonical generator indices surviving in `G ⊗ Z/2`.
    pub fn mod2_indices(&self) -> Vec<usize> {
        (0..self.num_generators()).filter(|&i| self.generator_order(i).is_even()).collect()
    }
}

impl fmt::Display for CanonicalGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Generators plus an integer relation matrix (one column per relation).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Presentation {
    pub generators: usize,
    pub relations: IntMatrix,
}

impl Presentation {
    pub fn new(generators: usize, relations: IntMatrix) -> Result<Self> {
        if relations.rows() != generators {
            return Err(Error::Dimension(format!(
                "relation matrix has {} rows for {} generators",
                relations.rows(),
                generators
            )));
        }
        Ok(Presentation { generators, relations })
    }

    pub fn free(g: usize) -> Self {
        Presentation { generators: g, relations: IntMatrix::zeros(g, 0) }
    }

    /// Coordinates of generators in the canonical form.
    pub fn subquotient(&self) -> Subquotient {
        Subquotient::of_presentation(self)
    }

    pub fn canonicalize(&self) -> CanonicalGroup {
        canonicalize(self)
    }

    pub fn relations_injective(&self) -> bool {
        super::snf::rank(&self.relations) == self.relations.cols()
    }

    pub fn direct_sum(&self, other: &Presentation) -> Presentation {
        Presentation {
            generators: self.generators + other.generators,
            relations: self.relations.block_diag(&other.relations),
        }
    }
}

/// Cokernel of the relation matrix in invariant-factor form.
pub fn canonicalize(p: &Presentation) -> CanonicalGroup {
    let d = super::snf::elementary_divisors(&p.relations);
    let rank = d.len();
    CanonicalGroup::from_orders(p.generators - rank, &d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::matrix::int;

    #[test]
    fn canonical_forms() {
        let p = Presentation::new(1, IntMatrix::from_rows(&[vec![2]])).unwrap();
        assert_eq!(canonicalize(&p), CanonicalGroup::cyclic(2));
        let p = Presentation::new(2, IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]])).unwrap();
        assert_eq!(canonicalize(&p), CanonicalGroup::from_orders(0, &[int(2), int(4)]));
        assert_eq!(canonicalize(&Presentation::free(2)), CanonicalGroup::free(2));
        let g = CanonicalGroup::from_orders(0, &[int(6), int(4)]);
        assert_eq!(g.torsion, vec![int(2), int(12)]);
        assert_eq!(g.to_string(), "Z/2 + Z/12");
        assert_eq!(CanonicalGroup::from_orders(0, &[int(1)]), CanonicalGroup::trivial());
    }
}
