use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::model::{delta_image, hom_coords, in_subgroup, moore_map, sum_chain_map, SqModel};
use crate::abelian::{CanonicalGroup, ExtClass, Homomorphism, IntMatrix};
use crate::chaincx::{Degree, GradedGroup, PseudoHomology};
use crate::error::{Error, Result};
use crate::sqcalc::sq_of;

/// A homological quadratic `Z^Λ`-bype `(B, b, β)`.
///
/// `b[n]` is the matrix of `b_n: B_n → Sq_{n−1}(B)` and `beta[n]` the
/// coordinates of a representative of `β_n ∈ Sq_{n−1}(B_n, B)`, both in the
/// canonical coordinates of the chain-level model (see [`SqModel`]). Missing
/// degrees are zero.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Bype {
    pub groups: GradedGroup,
    pub b: BTreeMap<Degree, IntMatrix>,
    pub beta: BTreeMap<Degree, Vec<BigInt>>,
}

impl Bype {
    pub fn zero(groups: GradedGroup) -> Bype {
        Bype { groups, ..Default::default() }
    }

    pub fn top(&self) -> Degree {
        self.groups.max_degree().unwrap_or(1)
    }

    /// Truncation that covers every `Sq_{n−1}` and `Sq_{n−1}(B_n, −)` needed.
    pub fn truncation(&self) -> usize {
        self.top().max(1) as usize + 1
    }

    pub fn model(&self) -> Result<SqModel> {
        SqModel::new(&self.groups, self.truncation())
    }

    pub fn model_with(&self, truncation: usize) -> Result<SqModel> {
        SqModel::new(&self.groups, truncation)
    }

    /// Sets `β_n` to the canonical lift of `b_n` (first preimage under `μ`).
    pub fn lift_beta(&mut self, model: &SqModel) -> Result<()> {
        for (n, bn) in self.groups.clone().iter() {
            let p = model.pseudo(bn, n - 1)?;
            let b = model.b_hom(n, self.b.get(&n))?;
            let target = hom_coords(bn, p.homology_n().group(), &b.gen_matrix)?;
            let x = preimage(&p.mu, &target).ok_or_else(|| Error::IllFormed("μ is not onto".into()))?;
            self.beta.insert(n, x);
        }
        Ok(())
    }
}

pub(crate) fn preimage(f: &Homomorphism, y: &[BigInt]) -> Option<Vec<BigInt>> {
    let cod = f.codomain.canonicalize();
    let mut a = f.gen_matrix.clone();
    for (i, o) in cod.orders().iter().enumerate() {
        if !o.is_zero() {
            let mut col = vec![BigInt::zero(); cod.num_generators()];
            col[i] = o.clone();
            a = a.hstack(&IntMatrix::from_columns(cod.num_generators(), &[col]));
        }
    }
    let x = if a.cols() == 0 {
        y.iter().all(Zero::is_zero).then(Vec::new)?
    } else {
        crate::abelian::solve(&a, y)?
    };
    let dom = f.domain.canonicalize();
    Some(dom.reduce(&x[..f.gen_matrix.cols()]))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeCheck {
    pub degree: Degree,
    /// `Sq_{n−1}(B)` on chain level.
    pub codomain: CanonicalGroup,
    /// Labeled summands of `Sq_{n−1}(B)` from the closed form.
    pub labels: Vec<String>,
    pub codomain_ok: bool,
    pub b_ok: bool,
    pub mu_ok: bool,
    pub messages: Vec<String>,
}

impl DegreeCheck {
    pub fn ok(&self) -> bool {
        self.codomain_ok && self.b_ok && self.mu_ok
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BypeReport {
    pub grading_ok: bool,
    pub grading_messages: Vec<String>,
    pub degrees: Vec<DegreeCheck>,
}

impl BypeReport {
    pub fn valid(&self) -> bool {
        self.grading_ok && self.degrees.iter().all(DegreeCheck::ok)
    }
}

/// Checks codomains against the closed form, `μβ_n = b_n` and the grading.
pub fn validate_bype(x: &Bype) -> BypeReport {
    let mut grading_messages = Vec::new();
    if let Some(n) = x.groups.min_degree().filter(|&n| n < 1) {
        grading_messages.push(format!("B_{n} ≠ 0 but bypes are 1-reduced"));
    }
    for n in x.b.keys().chain(x.beta.keys()) {
        if x.groups.get(*n).is_trivial() {
            grading_messages.push(format!("data given in degree {n} where B_{n} = 0"));
        }
    }
    let mut degrees = Vec::new();
    if grading_messages.is_empty() {
        match x.model() {
            Ok(model) => {
                for (n, _) in x.groups.iter() {
                    degrees.push(check_degree(x, &model, n));
                }
            }
            Err(e) => grading_messages.push(format!("model: {e}")),
        }
    }
    BypeReport { grading_ok: grading_messages.is_empty(), grading_messages, degrees }
}

fn check_degree(x: &Bype, model: &SqModel, n: Degree) -> DegreeCheck {
    let bn = x.groups.get(n);
    let mut c = DegreeCheck {
        degree: n,
        codomain: CanonicalGroup::trivial(),
        labels: vec![],
        codomain_ok: false,
        b_ok: false,
        mu_ok: false,
        messages: vec![],
    };
    let sq = match model.sq(n - 1) {
        Ok(s) => s,
        Err(e) => {
            c.messages.push(e.to_string());
            return c;
        }
    };
    c.codomain = sq.group().clone();
    match sq_of(&x.groups, n - 1) {
        Ok(v) => {
            c.labels = v.summands.iter().filter(|s| !s.group.is_trivial()).map(|s| s.label.clone()).collect();
            c.codomain_ok = v.group == c.codomain;
            if !c.codomain_ok {
                c.messages.push(format!("closed form gives Sq_{}(B) = {}, chain level {}", n - 1, v.group, c.codomain));
            }
        }
        Err(e) => c.messages.push(format!("closed form: {e}")),
    }
    let b = match model.b_hom(n, x.b.get(&n)) {
        Ok(b) => b,
        Err(e) => {
            c.messages.push(format!("b_{n}: {e}"));
            return c;
        }
    };
    c.b_ok = true;
    let p = match model.pseudo(&bn, n - 1) {
        Ok(p) => p,
        Err(e) => {
            c.messages.push(e.to_string());
            return c;
        }
    };
    let beta = x.beta.get(&n).cloned().unwrap_or_else(|| vec![BigInt::zero(); p.group().num_generators()]);
    if beta.len() != p.group().num_generators() {
        c.messages.push(format!(
            "β_{n} has {} coordinates, Sq_{}(B_{n}, B) = {} needs {}",
            beta.len(),
            n - 1,
            p.group(),
            p.group().num_generators()
        ));
        return c;
    }
    match hom_coords(&bn, p.homology_n().group(), &b.gen_matrix) {
        Ok(target) => {
            let got = p.mu_coords(&beta);
            c.mu_ok = p.hom.reduce(&target) == got;
            if !c.mu_ok {
                c.messages.push(format!("μβ_{n} ≠ b_{n}"));
            }
        }
        Err(e) => c.messages.push(e.to_string()),
    }
    c
}

/// Morphism data: `φ_n: B_n → B'_n`; missing degrees are zero.
pub type GradedHom = BTreeMap<Degree, Homomorphism>;
/// Correction `α_n ∈ Ext(B_n, B'_{n+1})`; missing degrees are zero.
pub type Correction = BTreeMap<Degree, ExtClass>;

/// Precomputed models for testing many corrections against one `φ`.
pub struct MorphismProblem<'a> {
    pub source: &'a Bype,
    pub target: &'a Bype,
    pub phi: GradedHom,
    ms: SqModel,
    mt: SqModel,
    degrees: Vec<DegreeData>,
}

struct DegreeData {
    n: Degree,
    b: Homomorphism,
    b2: Homomorphism,
    phi: Homomorphism,
    src: PseudoHomology,
    // classes C(B_n, n−1) → Λ#C(B')
    mixed: PseudoHomology,
    beta: Vec<BigInt>,
    // φ^*β'_n in mixed coordinates
    pulled: Vec<BigInt>,
    coset: IntMatrix,
}

impl<'a> MorphismProblem<'a> {
    pub fn new(source: &'a Bype, target: &'a Bype, phi: &GradedHom) -> Result<Self> {
        let t = source.truncation().max(target.truncation());
        let ms = source.model_with(t)?;
        let mt = target.model_with(t)?;
        let mut phi_full = GradedHom::new();
        let mut degrees = Vec::new();
        for (n, bn) in source.groups.iter() {
            let bn2 = target.groups.get(n);
            let f = match phi.get(&n) {
                Some(f) => f.clone(),
                None => Homomorphism::zero_between(bn, &bn2),
            };
            if f.domain != bn.presentation() || f.codomain != bn2.presentation() {
                return Err(Error::Dimension(format!("φ_{n} must run {bn} → {bn2}")));
            }
            phi_full.insert(n, f.clone());
            let b = ms.b_hom(n, source.b.get(&n))?;
            let b2 = mt.b_hom(n, target.b.get(&n))?;
            let src = ms.pseudo(bn, n - 1)?;
            let mixed = mt.pseudo(bn, n - 1)?;
            let beta = padded(source.beta.get(&n), src.group())?;
            let pulled = if bn2.is_trivial() {
                vec![BigInt::zero(); mixed.group().num_generators()]
            } else {
                let tp = mt.pseudo(&bn2, n - 1)?;
                let beta2 = padded(target.beta.get(&n), tp.group())?;
                let rep = tp.classes.representative(&beta2);
                let comp = moore_map(&f, n - 1)?.then(&rep)?;
                mixed.classes.class_of(&comp)?
            };
            let bnext = target.groups.get(n + 1);
            let coset = if bnext.is_trivial() {
                IntMatrix::zeros(mixed.group().num_generators(), 0)
            } else {
                delta_image(&mixed, bn, &mt.b_hom(n + 1, target.b.get(&(n + 1)))?)?
            };
            degrees.push(DegreeData { n, b, b2, phi: f, src, mixed, beta, pulled, coset });
        }
        Ok(MorphismProblem { source, target, phi: phi_full, ms, mt, degrees })
    }

    /// `Ext(B_n, B'_{n+1})` for every degree where it can be nonzero.
    pub fn correction_groups(&self) -> Vec<(Degree, CanonicalGroup, CanonicalGroup)> {
        self.source
            .groups
            .iter()
            .filter_map(|(n, g)| {
                let g2 = self.target.groups.get(n + 1);
                let e = crate::abelian::binary_functor(crate::abelian::BinaryKind::Ext, g, &g2);
                (!e.is_trivial()).then(|| (n, g.clone(), g2))
            })
            .collect()
    }

    /// Both conditions for one correction.
    pub fn holds(&self, alpha: &Correction) -> Result<bool> {
        let f = sum_chain_map(&self.ms, &self.mt, &self.phi, alpha)?;
        let g = self.ms.induced(&f, &self.mt)?;
        for d in &self.degrees {
            let on_h = g.on_homology(d.n - 1)?;
            let lhs = d.b.then(&on_h)?;
            let rhs = d.phi.then(&d.b2)?;
            if !lhs.equals(&rhs) {
                return Ok(false);
            }
            if d.mixed.group().is_trivial() {
                continue;
            }
            let pushed = d.mixed.classes.class_of(&d.src.classes.representative(&d.beta).then(&g)?)?;
            let diff: Vec<BigInt> = pushed.iter().zip(&d.pulled).map(|(a, b)| a - b).collect();
            if !in_subgroup(d.mixed.group(), &d.coset, &diff) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn padded(v: Option<&Vec<BigInt>>, g: &CanonicalGroup) -> Result<Vec<BigInt>> {
    match v {
        None => Ok(vec![BigInt::zero(); g.num_generators()]),
        Some(v) if v.len() == g.num_generators() => Ok(v.clone()),
        Some(v) => Err(Error::Dimension(format!("β has {} coordinates, {} needs {}", v.len(), g, g.num_generators()))),
    }
}

/// Whether `(φ, α)` satisfies both morphism conditions.
pub fn check_morphism(x: &Bype, x2: &Bype, phi: &GradedHom, alpha: &Correction) -> Result<bool> {
    MorphismProblem::new(x, x2, phi)?.holds(alpha)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub cap: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { cap: 1 << 16 }
    }
}

/// Outcome of an exhaustive witness search.
#[derive(Clone, Debug)]
pub enum Witness {
    Found(Correction),
    /// Every candidate was tried; the count is recorded.
    Exhausted(u64),
}

/// Searches `∏ Ext(B_n, B'_{n+1})` for a correction making `φ` a morphism.
pub fn find_morphism_witness(x: &Bype, x2: &Bype, phi: &GradedHom, cfg: SearchConfig) -> Result<Witness> {
    let problem = MorphismProblem::new(x, x2, phi)?;
    let mut factors = Vec::new();
    let mut total: u64 = 1;
    for (n, a, b) in problem.correction_groups() {
        let all = ExtClass::all(&a, &b)?;
        total = total.saturating_mul(all.len() as u64);
        factors.push((n, all));
    }
    if total > cfg.cap {
        return Err(Error::SearchTruncated(cfg.cap));
    }
    let candidate = |mut i: u64| -> Correction {
        let mut c = Correction::new();
        for (n, all) in &factors {
            let k = all.len() as u64;
            c.insert(*n, all[(i % k).to_usize().expect("small index")].clone());
            i /= k;
        }
        c
    };
    let found = (0..total)
        .into_par_iter()
        .map(|i| {
            let c = candidate(i);
            problem.holds(&c).map(|ok| ok.then_some(c))
        })
        .find_map_first(|r| match r {
            Ok(Some(c)) => Some(Ok(c)),
            Ok(None) => None,
            Err(e) => Some(Err(e)),
        });
    match found {
        Some(Ok(c)) => Ok(Witness::Found(c)),
        Some(Err(e)) => Err(e),
        None => Ok(Witness::Exhausted(total)),
    }
}

pub fn identity_hom(b: &GradedGroup) -> GradedHom {
    b.iter().map(|(n, g)| (n, Homomorphism::identity(&g.presentation()))).collect()
}
