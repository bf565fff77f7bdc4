use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::group::{CanonicalGroup, Presentation};
use super::hom::Homomorphism;
use super::lattice::{presented_homology, Subquotient};
use super::matrix::IntMatrix;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BinaryKind {
    Hom,
    Ext,
    Tensor,
    Tor,
}

impl BinaryKind {
    pub const ALL: [BinaryKind; 4] = [BinaryKind::Hom, BinaryKind::Ext, BinaryKind::Tensor, BinaryKind::Tor];
}

impl FromStr for BinaryKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hom" => Ok(BinaryKind::Hom),
            "ext" => Ok(BinaryKind::Ext),
            "tensor" => Ok(BinaryKind::Tensor),
            "tor" => Ok(BinaryKind::Tor),
            _ => Err(Error::InvalidArgument(format!("unknown binary functor '{s}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    Left,
    Right,
}

/// The value of a binary functor as an explicit subquotient.
///
/// Ambient coordinates are `X₀(A)⊗Y₀(B)` (tensor, hom) or `X₁(A)⊗Y₀(B)`
/// (tor, ext), indexed `i·g_B + j`. The left presentation must have
/// injective relations.
pub fn functor_subquotient(kind: BinaryKind, a: &Presentation, b: &Presentation) -> Subquotient {
    let (ga, ta) = (a.generators, a.relations.cols());
    let gb = b.generators;
    let da = &a.relations;
    let db = &b.relations;
    let ib = IntMatrix::identity(gb);
    let r0 = IntMatrix::identity(ga).kron(db);
    let r1 = IntMatrix::identity(ta).kron(db);
    let h = match kind {
        BinaryKind::Tensor => Subquotient::new(None, &da.kron(&ib).hstack(&r0)),
        BinaryKind::Tor => presented_homology(&IntMatrix::zeros(ta * gb, 0), &da.kron(&ib), &r1, &r0),
        BinaryKind::Hom => presented_homology(&IntMatrix::zeros(ga * gb, 0), &da.transpose().kron(&ib), &r0, &r1),
        BinaryKind::Ext => {
            Subquotient::new(None, &da.transpose().kron(&ib).hstack(&r1))
        }
    };
    h.expect("functor subquotient of valid presentations")
}

pub fn binary_functor(kind: BinaryKind, a: &CanonicalGroup, b: &CanonicalGroup) -> CanonicalGroup {
    functor_subquotient(kind, &a.presentation(), &b.presentation()).group().clone()
}

/// Action of the functor on `f` in the given slot, with `other` in the
/// remaining slot. Hom and Ext are contravariant on the left.
pub fn induced_map(kind: BinaryKind, f: &Homomorphism, slot: Slot, other: &CanonicalGroup) -> Result<Homomorphism> {
    let f = Homomorphism::new(f.domain.clone(), f.codomain.clone(), f.gen_matrix.clone())?;
    let o = other.presentation();
    let (src, dst, ambient) = match slot {
        Slot::Left => {
            for p in [&f.domain, &f.codomain] {
                if !p.relations_injective() {
                    return Err(Error::InvalidArgument("left slot needs injective relation matrices".into()));
                }
            }
            let io = IntMatrix::identity(o.generators);
            let f0 = &f.gen_matrix;
            let f1 = f.relation_lift();
            let s = functor_subquotient(kind, &f.domain, &o);
            let t = functor_subquotient(kind, &f.codomain, &o);
            match kind {
                BinaryKind::Tensor => (s, t, f0.kron(&io)),
                BinaryKind::Tor => (s, t, f1.kron(&io)),
                BinaryKind::Hom => (t, s, f0.transpose().kron(&io)),
                BinaryKind::Ext => (t, s, f1.transpose().kron(&io)),
            }
        }
        Slot::Right => {
            let s = functor_subquotient(kind, &o, &f.domain);
            let t = functor_subquotient(kind, &o, &f.codomain);
            let n = match kind {
                BinaryKind::Tensor | BinaryKind::Hom => o.generators,
                BinaryKind::Tor | BinaryKind::Ext => o.relations.cols(),
            };
            (s, t, IntMatrix::identity(n).kron(&f.gen_matrix))
        }
    };
    let m = src.induced_matrix(&dst, &ambient)?;
    Homomorphism::between(src.group(), dst.group(), m)
}

/// An element of `Ext(A, B)` represented by a map `X₁(A) → Y₀(B)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExtClass {
    pub a: Presentation,
    pub b: Presentation,
    /// `g_B × t_A` matrix.
    pub representative: IntMatrix,
}

impl ExtClass {
    pub fn new(a: Presentation, b: Presentation, representative: IntMatrix) -> Result<Self> {
        if representative.rows() != b.generators || representative.cols() != a.relations.cols() {
            return Err(Error::Dimension("Ext representative has the wrong shape".into()));
        }
        if !a.relations_injective() {
            return Err(Error::InvalidArgument("Ext needs an injective relation matrix for A".into()));
        }
        Ok(ExtClass { a, b, representative })
    }

    pub fn zero(a: &CanonicalGroup, b: &CanonicalGroup) -> Self {
        let (pa, pb) = (a.presentation(), b.presentation());
        let rep = IntMatrix::zeros(pb.generators, pa.relations.cols());
        ExtClass { a: pa, b: pb, representative: rep }
    }

    fn ambient_vector(&self) -> Vec<BigInt> {
        let gb = self.b.generators;
        let ta = self.a.relations.cols();
        let mut v = vec![BigInt::zero(); ta * gb];
        for i in 0..ta {
            for j in 0..gb {
                v[i * gb + j] = self.representative[(j, i)].clone();
            }
        }
        v
    }

    fn from_ambient(a: &Presentation, b: &Presentation, v: &[BigInt]) -> Self {
        let gb = b.generators;
        let ta = a.relations.cols();
        let mut rep = IntMatrix::zeros(gb, ta);
        for i in 0..ta {
            for j in 0..gb {
                rep[(j, i)] = v[i * gb + j].clone();
            }
        }
        ExtClass { a: a.clone(), b: b.clone(), representative: rep }
    }

    /// Coordinates in the canonical form of `Ext(A, B)`.
    pub fn coords(&self) -> Vec<BigInt> {
        functor_subquotient(BinaryKind::Ext, &self.a, &self.b)
            .coords(&self.ambient_vector())
            .expect("every representative lies in the Ext lattice")
    }

    /// The class with the given canonical coordinates.
    pub fn from_coords(a: &Presentation, b: &Presentation, coords: &[BigInt]) -> Self {
        let sq = functor_subquotient(BinaryKind::Ext, a, b);
        Self::from_ambient(a, b, &sq.element(coords))
    }

    /// Every class of the (finite) group `Ext(A, B)`.
    pub fn all(a: &CanonicalGroup, b: &CanonicalGroup) -> Result<Vec<ExtClass>> {
        let (pa, pb) = (a.presentation(), b.presentation());
        let sq = functor_subquotient(BinaryKind::Ext, &pa, &pb);
        Ok(enumerate_elements(sq.group())?
            .map(|c| Self::from_ambient(&pa, &pb, &sq.element(&c)))
            .collect())
    }

    pub fn add(&self, other: &ExtClass) -> ExtClass {
        ExtClass { representative: self.representative.add(&other.representative), ..self.clone() }
    }

    pub fn equals(&self, other: &ExtClass) -> bool {
        self.add(&ExtClass { representative: other.representative.neg(), ..other.clone() }).is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.coords().iter().all(|x| x.is_zero())
    }

    /// The middle group `E` of the extension `B ↣ E ↠ A`, generators `Y₀(B) ⊕ X₀(A)`.
    pub fn middle_group(&self) -> Presentation {
        let (gb, rb) = (self.b.generators, self.b.relations.cols());
        let (ga, ta) = (self.a.generators, self.a.relations.cols());
        let mut r = IntMatrix::zeros(gb + ga, rb + ta);
        r.set_block(0, 0, &self.b.relations);
        r.set_block(0, rb, &self.representative);
        r.set_block(gb, rb, &self.a.relations);
        Presentation { generators: gb + ga, relations: r }
    }
}

/// Connecting map `∂(α): A∗C → B⊗C` of the extension tensored with `C`.
pub fn connecting_map(alpha: &ExtClass, c: &CanonicalGroup) -> Result<Homomorphism> {
    let pc = c.presentation();
    let tor = functor_subquotient(BinaryKind::Tor, &alpha.a, &pc);
    let ten = functor_subquotient(BinaryKind::Tensor, &alpha.b, &pc);
    let f = alpha.representative.kron(&IntMatrix::identity(pc.generators));
    let m = tor.induced_matrix(&ten, &f)?;
    Homomorphism::between(tor.group(), ten.group(), m)
}

/// Iterator over the elements of a finite canonical group, in coordinates.
pub struct Elements {
    orders: Vec<BigInt>,
    current: Option<Vec<BigInt>>,
}

impl Iterator for Elements {
    type Item = Vec<BigInt>;
    fn next(&mut self) -> Option<Vec<BigInt>> {
        let out = self.current.clone()?;
        let mut next = out.clone();
        let mut i = 0;
        loop {
            if i == next.len() {
                self.current = None;
                break;
            }
            next[i] += 1;
            if next[i] < self.orders[i] {
                self.current = Some(next);
                break;
            }
            next[i] = BigInt::zero();
            i += 1;
        }
        Some(out)
    }
}

pub fn enumerate_elements(g: &CanonicalGroup) -> Result<Elements> {
    if g.free_rank > 0 {
        return Err(Error::InfiniteEnumeration(g.free_rank));
    }
    let orders = g.torsion.clone();
    let current = Some(vec![BigInt::zero(); orders.len()]);
    debug_assert!(orders.iter().all(|d| *d > BigInt::one()));
    Ok(Elements { orders, current })
}
