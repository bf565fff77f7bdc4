use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::f2::{solve_affine, F2Matrix};
use super::homological::{Bype, GradedHom};
use super::model::{moore_map, projection, SqModel};
use crate::abelian::{CanonicalGroup, ExtClass, Homomorphism, IntMatrix};
use crate::chaincx::{Degree, GradedGroup};
use crate::error::{Error, Result};
use crate::sqcalc::stabilization_map;

/// `dim B ⊗ Z/2`.
pub fn tensor_dim(g: &CanonicalGroup) -> usize {
    g.rank_mod2()
}

/// `dim B ∗ Z/2`.
pub fn tor_dim(g: &CanonicalGroup) -> usize {
    g.even_torsion_indices().len()
}

/// `φ ⊗ Z/2` on the bases of surviving canonical generators.
pub fn tensor_matrix(f: &Homomorphism) -> F2Matrix {
    let (a, b) = (f.domain.canonicalize(), f.codomain.canonicalize());
    let (ia, ib) = (a.mod2_indices(), b.mod2_indices());
    let mut m = F2Matrix::zeros(ib.len(), ia.len());
    for (c, &j) in ia.iter().enumerate() {
        for (r, &i) in ib.iter().enumerate() {
            m.set(r, c, f.gen_matrix[(i, j)].is_odd());
        }
    }
    m
}

/// `φ ∗ Z/2` on the bases `(d/2)·g` of the even cyclic factors.
pub fn tor_matrix(f: &Homomorphism) -> F2Matrix {
    let (a, b) = (f.domain.canonicalize(), f.codomain.canonicalize());
    let (ia, ib) = (a.even_torsion_indices(), b.even_torsion_indices());
    let mut m = F2Matrix::zeros(ib.len(), ia.len());
    for (c, &j) in ia.iter().enumerate() {
        let half: BigInt = a.generator_order(j) / BigInt::from(2);
        for (r, &i) in ib.iter().enumerate() {
            let d = b.generator_order(i);
            let prod: BigInt = &half * &f.gen_matrix[(i, j)];
            let v = prod.mod_floor(&d);
            let q: BigInt = v / (d / BigInt::from(2));
            m.set(r, c, q.is_odd());
        }
    }
    m
}

/// A stable homological bype: `b_n^k: B_n⊗Z₂ → B_{n−k}⊗Z₂ (k even) / B_{n−k}∗Z₂ (k odd)`
/// and `β_n^k: B_n∗Z₂ → B_{n−k}∗Z₂ (k even) / B_{n−k}⊗Z₂ (k odd)`, keyed `(n, k)`.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct StableBype {
    pub groups: GradedGroup,
    pub b: BTreeMap<(Degree, Degree), F2Matrix>,
    pub beta: BTreeMap<(Degree, Degree), F2Matrix>,
}

impl StableBype {
    pub fn zero(groups: GradedGroup) -> Self {
        StableBype { groups, ..Default::default() }
    }

    fn dim(&self, n: Degree, tensor: bool) -> usize {
        let g = self.groups.get(n);
        if tensor {
            tensor_dim(&g)
        } else {
            tor_dim(&g)
        }
    }

    pub fn b_shape(&self, n: Degree, k: Degree) -> (usize, usize) {
        (self.dim(n - k, k % 2 == 0), self.dim(n, true))
    }

    pub fn beta_shape(&self, n: Degree, k: Degree) -> (usize, usize) {
        (self.dim(n - k, k % 2 == 1), self.dim(n, false))
    }

    pub fn get_b(&self, n: Degree, k: Degree) -> F2Matrix {
        let (r, c) = self.b_shape(n, k);
        self.b.get(&(n, k)).cloned().unwrap_or_else(|| F2Matrix::zeros(r, c))
    }

    pub fn get_beta(&self, n: Degree, k: Degree) -> F2Matrix {
        let (r, c) = self.beta_shape(n, k);
        self.beta.get(&(n, k)).cloned().unwrap_or_else(|| F2Matrix::zeros(r, c))
    }

    /// Every `(n, k)`, `k ≥ 1`, with nonzero source and target space.
    pub fn slots(&self) -> Vec<(Degree, Degree)> {
        let ds = self.groups.degrees();
        let mut out = Vec::new();
        for &n in &ds {
            for &m in ds.iter().filter(|&&m| m < n) {
                out.push((n, n - m));
            }
        }
        out
    }

    /// Drops zero entries so equal bypes compare equal.
    pub fn normalized(mut self) -> Self {
        self.b.retain(|_, m| !m.is_zero());
        self.beta.retain(|_, m| !m.is_zero());
        self
    }

    /// Parity-typed shapes, `k ≥ 1`, nonnegative degrees and `b_n^1 = 0`.
    ///
    /// `b^1` never enters `Θ`, and stabilization never produces it since
    /// `Sq_{m,m}(Z, D) = Ext(Z, D⊗Z₂) = 0`.
    pub fn validate(&self) -> Result<()> {
        if let Some(n) = self.groups.min_degree().filter(|&n| n < 0) {
            return Err(Error::InvalidArgument(format!("stable bypes need B_n = 0 for n < 0, found B_{n}")));
        }
        for (name, map, shape) in [
            ("b", &self.b, Self::b_shape as fn(&Self, Degree, Degree) -> (usize, usize)),
            ("β", &self.beta, Self::beta_shape),
        ] {
            for (&(n, k), m) in map {
                if k < 1 {
                    return Err(Error::InvalidArgument(format!("{name}_{n}^{k}: k must be ≥ 1")));
                }
                if m.shape() != shape(self, n, k) {
                    return Err(Error::Dimension(format!(
                        "{name}_{n}^{k} is {:?}, parity rule needs {:?}",
                        m.shape(),
                        shape(self, n, k)
                    )));
                }
            }
        }
        if let Some((&(n, _), _)) = self.b.iter().find(|(&(_, k), m)| k == 1 && !m.is_zero()) {
            return Err(Error::InvalidArgument(format!("b_{n}^1 must vanish (it has no place in the Sq-action)")));
        }
        Ok(())
    }
}

/// Whether `β' = β + b^{k+1}δ` for some `δ_n: B_{n−1}∗Z₂ → B_n⊗Z₂`.
pub fn stable_equiv(s: &StableBype, s2: &StableBype) -> bool {
    if s.groups != s2.groups {
        return false;
    }
    let slots = s.slots();
    if slots.iter().any(|&(n, k)| s.get_b(n, k) != s2.get_b(n, k)) {
        return false;
    }
    // δ_n only enters the relations for β_{n−1}, so degrees decouple.
    for n in s.groups.degrees().into_iter().map(|d| d + 1).chain(s.groups.degrees()) {
        let (r, c) = (s.dim(n, true), s.dim(n - 1, false));
        let ks: Vec<Degree> = slots.iter().filter(|&&(m, _)| m == n - 1).map(|&(_, k)| k).collect();
        let f = |x: &[bool]| {
            let mut d = F2Matrix::zeros(r, c);
            for i in 0..r {
                for j in 0..c {
                    d.set(i, j, x[i * c + j]);
                }
            }
            let mut out = Vec::new();
            for &k in &ks {
                let lhs = s2.get_beta(n - 1, k).add(&s.get_beta(n - 1, k));
                let rhs = s.get_b(n, k + 1).mul(&d);
                out.extend(lhs.add(&rhs).entries());
            }
            out
        };
        if solve_affine(r * c, f).is_none() {
            return false;
        }
    }
    true
}

/// `Σ^∞` of a homological bype.
///
/// `b_n^k` is the stabilization of the `Sq_{n−1,n−k}(B_{n−k})` component of
/// `b_n`; `β_n^k` the stabilization of the `Ext` part of the
/// `Sq_{n−1,n−k}(B_n, B_{n−k})` component of `β_n`, read off against the
/// lift of its `μ`-image chosen by [`Bype::lift_beta`]'s rule.
pub fn stabilize_bype(x: &Bype) -> Result<StableBype> {
    let mut out = StableBype::zero(x.groups.clone());
    if x.groups.is_zero() {
        return Ok(out);
    }
    let model = x.model()?;
    let t = model.truncation;
    let mut sigma = SigmaCache::new(t);
    for (n, bn) in x.groups.iter() {
        let b = model.b_hom(n, x.b.get(&n))?;
        let p = model.pseudo(bn, n - 1)?;
        let beta = x.beta.get(&n).cloned().unwrap_or_else(|| vec![BigInt::zero(); p.group().num_generators()]);
        let rep = p.classes.representative(&beta);
        for (m, dm) in x.groups.iter().filter(|&(m, _)| m < n) {
            let k = n - m;
            let single = sigma.model(dm, m)?;
            let g = model.induced(&projection(&model, m, &single)?, &single)?;
            if k >= 2 {
                let comp = b.then(&g.on_homology(n - 1)?)?;
                let s = sigma.get(dm, m, n - 1)?;
                let full = s.mul(&F2Matrix::from_int(&comp.gen_matrix));
                let cols = bn.mod2_indices();
                out.b.insert((n, k), select_columns(&full, &cols));
            }
            // Ext part of the component against the canonical lift.
            let q = single.pseudo(bn, n - 1)?;
            let xm = q.classes.class_of(&rep.then(&g)?)?;
            let mu = q.mu_coords(&xm);
            let lift = super::homological::preimage(&q.mu, &mu).ok_or_else(|| Error::IllFormed("μ is not onto".into()))?;
            let diff: Vec<BigInt> = xm.iter().zip(&lift).map(|(a, b)| a - b).collect();
            let e = super::homological::preimage(&q.delta, &q.group().reduce(&diff))
                .ok_or_else(|| Error::IllFormed("difference of lifts is not in the image of Δ".into()))?;
            let hn = q.homology_n1().group().clone();
            let ext = ExtClass::from_coords(&bn.presentation(), &hn.presentation(), &e);
            let s = sigma.get(dm, m, n)?;
            out.beta.insert((n, k), ext_as_tor_map(bn, &ext, &s));
        }
    }
    Ok(out.normalized())
}

fn select_columns(m: &F2Matrix, cols: &[usize]) -> F2Matrix {
    let mut out = F2Matrix::zeros(m.rows(), cols.len());
    for (c, &j) in cols.iter().enumerate() {
        for i in 0..m.rows() {
            out.set(i, c, m.get(i, j));
        }
    }
    out
}

/// `Ext(A, H) → Ext(A, S) = Hom(A∗Z₂, S)` for `σ: H → S` with `S` a `Z/2`-space.
fn ext_as_tor_map(a: &CanonicalGroup, e: &ExtClass, s: &F2Matrix) -> F2Matrix {
    let img = s.mul(&F2Matrix::from_int(&e.representative));
    let idx: Vec<usize> = a.even_torsion_indices().into_iter().map(|i| i - a.free_rank).collect();
    select_columns(&img, &idx)
}

/// The stabilization `H_q Λ₍#₎C(D, m) → D⊗Z₂ (q−m odd) / D∗Z₂ (q−m even)`
/// on chain-level coordinates.
///
/// The target is additive in `D` and has no natural endomorphisms besides
/// `0, 1`, so the map is assembled from the cyclic factors of `D`, where it is
/// either zero or the unique surjection onto `Z/2` according to the closed
/// form.
struct SigmaCache {
    truncation: usize,
    models: HashMap<(CanonicalGroup, Degree), SqModel>,
    maps: HashMap<(CanonicalGroup, Degree, Degree), F2Matrix>,
}

impl SigmaCache {
    fn new(truncation: usize) -> Self {
        SigmaCache { truncation, models: HashMap::new(), maps: HashMap::new() }
    }

    fn model(&mut self, d: &CanonicalGroup, m: Degree) -> Result<SqModel> {
        if let Some(x) = self.models.get(&(d.clone(), m)) {
            return Ok(x.clone());
        }
        let x = SqModel::single(d, m, self.truncation)?;
        self.models.insert((d.clone(), m), x.clone());
        Ok(x)
    }

    fn get(&mut self, d: &CanonicalGroup, m: Degree, q: Degree) -> Result<F2Matrix> {
        let key = (d.clone(), m, q);
        if let Some(s) = self.maps.get(&key) {
            return Ok(s.clone());
        }
        let tensor = (q - m) % 2 == 1;
        let md = self.model(d, m)?;
        let h = md.sq(q)?;
        let basis = if tensor { d.mod2_indices() } else { d.even_torsion_indices() };
        let mut s = F2Matrix::zeros(basis.len(), h.group().num_generators());
        for (row, &i) in basis.iter().enumerate() {
            let ci = CanonicalGroup::from_orders(usize::from(d.generator_order(i).is_zero()), &cyclic_order(d, i));
            let mi = self.model(&ci, m)?;
            let mut pm = IntMatrix::zeros(1, d.num_generators());
            pm[(0, i)] = BigInt::one();
            let pi = Homomorphism::between(d, &ci, pm)?;
            let gi = md.induced(&moore_map(&pi, m)?, &mi)?.on_homology(q)?;
            let sc = stabilization_map(&ci, q, m)?;
            if sc.is_zero() {
                continue;
            }
            let hc = mi.sq(q)?.group().clone();
            let surj = unique_surjection(&hc)?;
            let r = surj.mul(&F2Matrix::from_int(&gi.gen_matrix));
            for j in 0..r.cols() {
                s.set(row, j, r.get(0, j));
            }
        }
        self.maps.insert(key, s.clone());
        Ok(s)
    }
}

fn cyclic_order(d: &CanonicalGroup, i: usize) -> Vec<BigInt> {
    let o = d.generator_order(i);
    if o.is_zero() {
        vec![]
    } else {
        vec![o]
    }
}

/// The only nonzero map `H → Z/2` when `dim H⊗Z₂ = 1`.
fn unique_surjection(h: &CanonicalGroup) -> Result<F2Matrix> {
    let idx = h.mod2_indices();
    if idx.len() != 1 {
        return Err(Error::NotDefined(format!("stabilization out of {h} is not determined by naturality")));
    }
    let mut m = F2Matrix::zeros(1, h.num_generators());
    m.set(0, idx[0], true);
    Ok(m)
}

/// Homomorphisms `φ_n` as `(φ⊗Z₂, φ∗Z₂)` pairs.
pub fn mod2_parts(phi: &GradedHom) -> BTreeMap<Degree, (F2Matrix, F2Matrix)> {
    phi.iter().map(|(&n, f)| (n, (tensor_matrix(f), tor_matrix(f)))).collect()
}
