use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::f2::{solve_affine, F2Matrix};
use super::homological::GradedHom;
use super::stable::{tensor_dim, tensor_matrix, tor_dim, tor_matrix, StableBype};
use crate::abelian::Homomorphism;
use crate::chaincx::{Degree, GradedGroup};
use crate::error::{Error, Result};

/// A module over the free `Z₂`-algebra on the `Sq_k` (`k ≥ 2` even).
///
/// `H(2)_n` is held in split form `H_n⊗Z₂ ⊕ H_{n−1}∗Z₂`; `delta` and `mu` are
/// stored so that files can be checked for that form.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct FModule {
    pub h: GradedGroup,
    pub h2: BTreeMap<Degree, usize>,
    /// `Δ_n: H_n⊗Z₂ → H(2)_n`.
    pub delta: BTreeMap<Degree, F2Matrix>,
    /// `μ_n: H(2)_n → H_{n−1}∗Z₂`.
    pub mu: BTreeMap<Degree, F2Matrix>,
    /// `Sq_k: H(2)_n → H(2)_{n−k}`, keyed `(n, k)`; missing entries are zero.
    pub sq: BTreeMap<(Degree, Degree), F2Matrix>,
}

fn split_dims(h: &GradedGroup, n: Degree) -> (usize, usize) {
    (tensor_dim(&h.get(n)), tor_dim(&h.get(n - 1)))
}

fn h2_degrees(h: &GradedGroup) -> Vec<Degree> {
    let ds: BTreeSet<Degree> = h.degrees().into_iter().flat_map(|n| [n, n + 1]).collect();
    ds.into_iter().filter(|&n| split_dims(h, n) != (0, 0)).collect()
}

fn canonical_delta(t: usize, s: usize) -> F2Matrix {
    F2Matrix::blocks(&F2Matrix::identity(t), &F2Matrix::zeros(t, 0), &F2Matrix::zeros(s, t), &F2Matrix::zeros(s, 0))
}

fn canonical_mu(t: usize, s: usize) -> F2Matrix {
    F2Matrix::blocks(&F2Matrix::zeros(s, t), &F2Matrix::identity(s), &F2Matrix::zeros(0, t), &F2Matrix::zeros(0, s))
}

impl FModule {
    /// The split module with zero action.
    pub fn split(h: GradedGroup) -> FModule {
        let mut f = FModule { h, ..Default::default() };
        for n in h2_degrees(&f.h) {
            let (t, s) = split_dims(&f.h, n);
            f.h2.insert(n, t + s);
            f.delta.insert(n, canonical_delta(t, s));
            f.mu.insert(n, canonical_mu(t, s));
        }
        f
    }

    pub fn dim(&self, n: Degree) -> usize {
        self.h2.get(&n).copied().unwrap_or(0)
    }

    pub fn get_sq(&self, n: Degree, k: Degree) -> F2Matrix {
        self.sq.get(&(n, k)).cloned().unwrap_or_else(|| F2Matrix::zeros(self.dim(n - k), self.dim(n)))
    }

    /// Split form, even `k ≥ 2` and matching shapes.
    pub fn validate(&self) -> Result<()> {
        let canon = FModule::split(self.h.clone());
        if self.h2 != canon.h2 || self.delta != canon.delta || self.mu != canon.mu {
            return Err(Error::InvalidModule(
                "H(2) is not in split form; re-split as H_n⊗Z₂ ⊕ H_{n−1}∗Z₂ with Δ = (1 0)ᵀ and μ = (0 1)".into(),
            ));
        }
        for (&(n, k), m) in &self.sq {
            if k < 2 || k % 2 != 0 {
                return Err(Error::InvalidModule(format!("Sq_{k} given on H(2)_{n}; only even k ≥ 2 act")));
            }
            if m.shape() != (self.dim(n - k), self.dim(n)) {
                return Err(Error::Dimension(format!(
                    "Sq_{k} on H(2)_{n} is {:?}, needs {:?}",
                    m.shape(),
                    (self.dim(n - k), self.dim(n))
                )));
            }
        }
        Ok(())
    }

    /// `(n, k)` pairs with both `H(2)_n` and `H(2)_{n−k}` nonzero.
    pub fn slots(&self) -> Vec<(Degree, Degree)> {
        slots_between(&self.h2, &self.h2)
    }
}

fn slots_between(src: &BTreeMap<Degree, usize>, tgt: &BTreeMap<Degree, usize>) -> Vec<(Degree, Degree)> {
    let mut out = Vec::new();
    for (&n, _) in src.iter().filter(|(_, &d)| d > 0) {
        for (&m, _) in tgt.iter().filter(|(&m, &e)| e > 0 && m < n && (n - m) % 2 == 0) {
            out.push((n, n - m));
        }
    }
    out
}

/// `Sq_k` on `H(2)_n` is `[[b_n^k, β_{n−1}^{k−1}], [b_n^{k+1}, β_{n−1}^k]]`.
pub fn theta(s: &StableBype) -> Result<FModule> {
    s.validate()?;
    let mut f = FModule::split(s.groups.clone());
    for (n, k) in f.slots() {
        let m = F2Matrix::blocks(&s.get_b(n, k), &s.get_beta(n - 1, k - 1), &s.get_b(n, k + 1), &s.get_beta(n - 1, k));
        if !m.is_zero() {
            f.sq.insert((n, k), m);
        }
    }
    Ok(f)
}

pub fn theta_inverse(f: &FModule) -> Result<StableBype> {
    f.validate()?;
    let mut s = StableBype::zero(f.h.clone());
    for (n, k) in f.slots() {
        let m = f.get_sq(n, k);
        let (t, _) = split_dims(&f.h, n);
        let (t2, r2) = split_dims(&f.h, n - k);
        let (c, r) = (m.cols(), m.rows());
        debug_assert_eq!(r, t2 + r2);
        s.b.insert((n, k), m.block(0, 0, t2, t));
        s.beta.insert((n - 1, k - 1), m.block(0, t, t2, c - t));
        s.b.insert((n, k + 1), m.block(t2, 0, r - t2, t));
        s.beta.insert((n - 1, k), m.block(t2, t, r - t2, c - t));
    }
    Ok(s.normalized())
}

/// Whether some `ψ_n = [[φ_n⊗Z₂, ε_n], [0, φ_{n−1}∗Z₂]]` commutes with every `Sq_k`.
///
/// The ladder with `Δ` and `μ` forces this block shape; the remaining
/// condition is affine in the `ε_n`, so it is decided by linear algebra over
/// `Z₂` instead of enumeration.
pub fn fmodule_check_morphism(f: &FModule, f2: &FModule, phi: &GradedHom) -> Result<bool> {
    f.validate()?;
    f2.validate()?;
    let mut tens = BTreeMap::new();
    let mut tor = BTreeMap::new();
    for (n, g) in f.h.iter() {
        let g2 = f2.h.get(n);
        let p = match phi.get(&n) {
            Some(p) => p.clone(),
            None => Homomorphism::zero_between(g, &g2),
        };
        if p.domain != g.presentation() || p.codomain != g2.presentation() {
            return Err(Error::Dimension(format!("φ_{n} must run {g} → {g2}")));
        }
        tens.insert(n, tensor_matrix(&p));
        tor.insert(n, tor_matrix(&p));
    }
    let degrees: BTreeSet<Degree> = f.h2.keys().chain(f2.h2.keys()).copied().collect();
    // ε_n: H_{n−1}∗Z₂ → H'_n⊗Z₂, flattened in degree order.
    let mut layout = Vec::new();
    let mut nvars = 0;
    for &n in &degrees {
        let r = split_dims(&f2.h, n).0;
        let c = split_dims(&f.h, n).1;
        layout.push((n, nvars, r, c));
        nvars += r * c;
    }
    let psi = |x: &[bool], n: Degree| -> F2Matrix {
        let (t, s) = split_dims(&f.h, n);
        let (t2, s2) = split_dims(&f2.h, n);
        let a = tens.get(&n).cloned().unwrap_or_else(|| F2Matrix::zeros(t2, t));
        let d = tor.get(&(n - 1)).cloned().unwrap_or_else(|| F2Matrix::zeros(s2, s));
        let mut e = F2Matrix::zeros(t2, s);
        if let Some(&(_, off, r, c)) = layout.iter().find(|l| l.0 == n) {
            for i in 0..r {
                for j in 0..c {
                    e.set(i, j, x[off + i * c + j]);
                }
            }
        }
        F2Matrix::blocks(&a, &e, &F2Matrix::zeros(s2, t), &d)
    };
    let ks: BTreeSet<(Degree, Degree)> = slots_between(&f.h2, &f2.h2).into_iter().collect();
    let eqs = |x: &[bool]| {
        let mut out = Vec::new();
        for &(n, k) in &ks {
            let lhs = psi(x, n - k).mul(&f.get_sq(n, k));
            let rhs = f2.get_sq(n, k).mul(&psi(x, n));
            out.extend(lhs.add(&rhs).entries());
        }
        out
    };
    Ok(solve_affine(nvars, eqs).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::CanonicalGroup;
    use crate::bype::homological::identity_hom;

    fn z2() -> CanonicalGroup {
        CanonicalGroup::cyclic(2)
    }

    #[test]
    fn single_degree_has_two_trivial_layers() {
        let s = StableBype::zero(GradedGroup::single(3, z2()));
        let f = theta(&s).unwrap();
        assert_eq!(f.h2, BTreeMap::from([(3, 1), (4, 1)]));
        assert!(f.sq.is_empty());
        assert_eq!(theta_inverse(&f).unwrap(), s);
    }

    #[test]
    fn single_b2_block_is_placed() {
        let mut s = StableBype::zero(GradedGroup::from_pairs([(2, z2()), (4, z2())]));
        s.b.insert((4, 2), F2Matrix::identity(1));
        let f = theta(&s).unwrap();
        let m = f.get_sq(4, 2);
        // H(2)_4 = B_4⊗Z₂ and H(2)_2 = B_2⊗Z₂ since B_1 = B_3 = 0.
        assert_eq!(m, F2Matrix::identity(1));
        assert_eq!(theta_inverse(&f).unwrap(), s);
    }

    #[test]
    fn rejects_odd_operators_and_bad_splitting() {
        let s = StableBype::zero(GradedGroup::from_pairs([(2, z2()), (5, z2())]));
        let mut f = theta(&s).unwrap();
        f.sq.insert((5, 3), F2Matrix::zeros(f.dim(2), f.dim(5)));
        assert!(theta_inverse(&f).is_err());
        let mut g = theta(&s).unwrap();
        g.delta.insert(2, F2Matrix::zeros(1, 1));
        assert!(matches!(theta_inverse(&g), Err(Error::InvalidModule(_))));
    }

    #[test]
    fn identity_morphisms_and_a_nonmorphism() {
        let b = GradedGroup::from_pairs([(2, z2()), (4, z2())]);
        let mut s = StableBype::zero(b.clone());
        s.b.insert((4, 2), F2Matrix::identity(1));
        let f = theta(&s).unwrap();
        let zero = theta(&StableBype::zero(b.clone())).unwrap();
        let id = identity_hom(&b);
        assert!(fmodule_check_morphism(&f, &f, &id).unwrap());
        assert!(fmodule_check_morphism(&zero, &zero, &id).unwrap());
        assert!(!fmodule_check_morphism(&f, &zero, &id).unwrap());
        assert!(fmodule_check_morphism(&f, &zero, &GradedHom::new()).unwrap());
    }
}
