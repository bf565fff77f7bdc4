use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::group::{CanonicalGroup, Presentation};
use super::matrix::IntMatrix;
use super::snf::{hermite_rows, smith_normal_form, Snf};
use crate::error::{Error, Result};

/// Columns spanning the integer kernel of `a` (a basis of a saturated lattice).
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let s = smith_normal_form(a);
    let n = a.cols();
    s.v.select_columns(&(s.rank..n).collect::<Vec<_>>())
}

/// A basis (as columns) of the lattice spanned by the columns of `a`.
pub fn column_basis(a: &IntMatrix) -> IntMatrix {
    if a.cols() == 0 {
        return IntMatrix::zeros(a.rows(), 0);
    }
    hermite_rows(&a.transpose()).transpose()
}

/// Integer solution of `a·x = b`, if one exists.
pub fn solve(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let s = smith_normal_form(a);
    solve_with(&s, a.cols(), b)
}

fn solve_with(s: &Snf, n: usize, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let y = s.u.mul_vec(b);
    let mut c = vec![BigInt::zero(); n];
    for (i, yi) in y.iter().enumerate() {
        if i < s.rank {
            let (q, r) = yi.div_rem(&s.d[(i, i)]);
            if !r.is_zero() {
                return None;
            }
            c[i] = q;
        } else if !yi.is_zero() {
            return None;
        }
    }
    Some(s.v.mul_vec(&c))
}

/// Integer solution `X` of `a·X = b`, column by column.
pub fn solve_matrix(a: &IntMatrix, b: &IntMatrix) -> Option<IntMatrix> {
    let s = smith_normal_form(a);
    let mut cols = Vec::with_capacity(b.cols());
    for j in 0..b.cols() {
        cols.push(solve_with(&s, a.cols(), &b.column(j))?);
    }
    Some(IntMatrix::from_columns(a.cols(), &cols))
}

/// Whether every column of `b` lies in the column lattice of `a`.
pub fn in_lattice(a: &IntMatrix, b: &IntMatrix) -> bool {
    if b.is_zero() {
        return true;
    }
    solve_matrix(a, b).is_some()
}

/// A subquotient `L / R` of `Z^N`: `L` has a column basis `K`, `R ⊆ L` is
/// spanned by ambient vectors. Provides canonical coordinates on `L / R`.
#[derive(Clone, Debug)]
pub struct Subquotient {
    ambient: usize,
    // None when L is all of Z^N
    basis: Option<(IntMatrix, Snf)>,
    rel: Snf,
    // canonical generator index -> row of rel.u
    order: Vec<usize>,
    group: CanonicalGroup,
}

impl Subquotient {
    /// `basis` must have independent columns and contain every relation.
    pub fn new(basis: Option<IntMatrix>, relations: &IntMatrix) -> Result<Self> {
        let ambient = relations.rows();
        let basis = match basis {
            Some(k) => {
                if k.rows() != ambient {
                    return Err(Error::Dimension("subquotient basis and relations differ in ambient rank".into()));
                }
                let s = smith_normal_form(&k);
                if s.rank != k.cols() {
                    return Err(Error::Dimension("subquotient basis columns are dependent".into()));
                }
                Some((k, s))
            }
            None => None,
        };
        let l = basis.as_ref().map_or(ambient, |(k, _)| k.cols());
        let rk = match &basis {
            None => relations.clone(),
            Some((_, s)) => {
                let mut cols = Vec::with_capacity(relations.cols());
                for j in 0..relations.cols() {
                    let c = solve_with(s, l, &relations.column(j))
                        .ok_or_else(|| Error::IllFormed("relation outside the subgroup".into()))?;
                    cols.push(c);
                }
                IntMatrix::from_columns(l, &cols)
            }
        };
        Ok(Self::from_internal(ambient, basis, &rk))
    }

    fn from_internal(ambient: usize, basis: Option<(IntMatrix, Snf)>, rk: &IntMatrix) -> Self {
        let l = rk.rows();
        let rel = smith_normal_form(rk);
        let mut order: Vec<usize> = (rel.rank..l).collect();
        let mut torsion = Vec::new();
        for i in 0..rel.rank {
            let d = &rel.d[(i, i)];
            if !d.is_one() {
                order.push(i);
                torsion.push(d.clone());
            }
        }
        let group = CanonicalGroup { free_rank: l - rel.rank, torsion };
        Subquotient { ambient, basis, rel, order, group }
    }

    /// Subquotient spanned by arbitrary (possibly dependent) generators.
    pub fn from_generators(gens: &IntMatrix, relations: &IntMatrix) -> Result<Self> {
        let all = gens.hstack(relations);
        Self::new(Some(column_basis(&all)), relations)
    }

    pub fn of_presentation(p: &Presentation) -> Self {
        Self::from_internal(p.generators, None, &p.relations)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn group(&self) -> &CanonicalGroup {
        &self.group
    }

    fn lattice_coords(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        match &self.basis {
            None => Some(x.to_vec()),
            Some((k, s)) => solve_with(s, k.cols(), x),
        }
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.lattice_coords(x).is_some()
    }

    /// Canonical coordinates of an ambient vector lying in `L`.
    pub fn coords(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        let c = self
            .lattice_coords(x)
            .ok_or_else(|| Error::IllFormed("vector outside the subquotient".into()))?;
        let z = self.rel.u.mul_vec(&c);
        Ok(self.group.reduce(&self.order.iter().map(|&i| z[i].clone()).collect::<Vec<_>>()))
    }

    /// Ambient representative of the k-th canonical generator.
    pub fn generator(&self, k: usize) -> Vec<BigInt> {
        let c = self.rel.u_inv.column(self.order[k]);
        match &self.basis {
            None => c,
            Some((b, _)) => b.mul_vec(&c),
        }
    }

    /// Generators as columns of an `N × g` matrix.
    pub fn generators(&self) -> IntMatrix {
        let cols: Vec<_> = (0..self.order.len()).map(|k| self.generator(k)).collect();
        IntMatrix::from_columns(self.ambient, &cols)
    }

    /// Ambient vector for canonical coordinates.
    pub fn element(&self, coords: &[BigInt]) -> Vec<BigInt> {
        let g = self.generators();
        g.mul_vec(coords)
    }

    /// Matrix, in canonical coordinates, of the map induced by the ambient
    /// matrix `f: Z^{N} → Z^{N'}` (which must carry `self` into `target`).
    pub fn induced_matrix(&self, target: &Subquotient, f: &IntMatrix) -> Result<IntMatrix> {
        if f.cols() != self.ambient || f.rows() != target.ambient {
            return Err(Error::Dimension(format!(
                "ambient map {}x{} between ranks {} and {}",
                f.rows(),
                f.cols(),
                self.ambient,
                target.ambient
            )));
        }
        let mut cols = Vec::with_capacity(self.order.len());
        for k in 0..self.order.len() {
            cols.push(target.coords(&f.mul_vec(&self.generator(k)))?);
        }
        Ok(IntMatrix::from_columns(target.group.num_generators(), &cols))
    }
}

/// Homology at the middle of `G₂ →F₂ G₁ →F₁ G₀` with `Gᵢ = Z^{nᵢ}/Rᵢ`.
pub fn presented_homology(f2: &IntMatrix, f1: &IntMatrix, r1: &IntMatrix, r0: &IntMatrix) -> Result<Subquotient> {
    let n1 = f1.cols();
    let relations = f2.hstack(r1);
    if relations.rows() != n1 {
        return Err(Error::Dimension("homology: incoming map and relations disagree".into()));
    }
    if f1.is_zero() {
        return Subquotient::new(None, &relations);
    }
    let stacked = f1.hstack(r0);
    let ker = kernel_basis(&stacked);
    let proj = ker.select_rows(&(0..n1).collect::<Vec<_>>());
    let basis = column_basis(&proj.hstack(&relations));
    if basis.cols() == n1 && basis.is_identity() {
        return Subquotient::new(None, &relations);
    }
    Subquotient::new(Some(basis), &relations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::matrix::int;

    #[test]
    fn kernel_and_solve() {
        let a = IntMatrix::from_rows(&[vec![1, 2, 3], vec![2, 4, 6]]);
        let k = kernel_basis(&a);
        assert_eq!(k.cols(), 2);
        assert!(a.mul(&k).is_zero());
        assert!(solve(&IntMatrix::from_rows(&[vec![2]]), &[int(3)]).is_none());
        assert_eq!(solve(&IntMatrix::from_rows(&[vec![2]]), &[int(4)]), Some(vec![int(2)]));
    }

    #[test]
    fn homology_of_two_term() {
        // Z --2--> Z --0--> 0, homology at the middle is Z/2
        let f2 = IntMatrix::from_rows(&[vec![2]]);
        let f1 = IntMatrix::zeros(0, 1);
        let h = presented_homology(&f2, &f1, &IntMatrix::zeros(1, 0), &IntMatrix::zeros(0, 0)).unwrap();
        assert_eq!(h.group(), &CanonicalGroup::cyclic(2));
        // kernel of Z/4 --2--> Z/4 is Z/2 generated by 2
        let f1 = IntMatrix::from_rows(&[vec![2]]);
        let r = IntMatrix::from_rows(&[vec![4]]);
        let h = presented_homology(&IntMatrix::zeros(1, 0), &f1, &r, &r).unwrap();
        assert_eq!(h.group(), &CanonicalGroup::cyclic(2));
        assert_eq!(h.coords(&[int(2)]).unwrap(), vec![int(1)]);
        assert_eq!(h.coords(&[int(6)]).unwrap(), vec![int(1)]);
        assert!(h.coords(&[int(1)]).is_err());
    }
}
