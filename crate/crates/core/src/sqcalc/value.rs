use std::fmt;

use serde::{Deserialize, Serialize};

use super::functors::{bype_functor, trp, BypeKind};
use crate::abelian::{binary_functor, BinaryKind, CanonicalGroup, Presentation};
use crate::chaincx::{Degree, GradedGroup};
use crate::error::{Error, Result};
use crate::quadratic::{gamma, lambda2, omega, r_functor};

/// The eleven cases of the `Sq_{m+k,m}` classification, in precedence order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Case {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
    VIII,
    IX,
    X,
    XI,
}

impl Case {
    pub const ALL: [Case; 11] =
        [Case::I, Case::II, Case::III, Case::IV, Case::V, Case::VI, Case::VII, Case::VIII, Case::IX, Case::X, Case::XI];

    /// Whether the case condition holds for `k = n − m` (ignoring precedence).
    pub fn condition(self, k: Degree, m: Degree) -> bool {
        let even = k.rem_euclid(2) == 0;
        match self {
            Case::I => k == 0 && m == 1,
            Case::II => k == 0 && m > 1,
            Case::III => even && k == m + 1,
            Case::IV => !even && k == m + 1,
            Case::V => even && 0 < k && k < m - 1,
            Case::VI => !even && 0 < k && k < m - 1,
            Case::VII => even && k == m - 1,
            Case::VIII => !even && k == m - 1,
            Case::IX => even && k == m,
            Case::X => !even && k == m,
            Case::XI => !Case::ALL[..10].iter().any(|c| c.condition(k, m)),
        }
    }

    /// The first case whose condition holds; (I) shadows (VII) at `m = 1, k = 0`.
    pub fn select(n: Degree, m: Degree) -> Case {
        let k = n - m;
        *Case::ALL.iter().find(|c| c.condition(k, m)).expect("(XI) is the complement")
    }

    /// Summand terms of the case, in display order.
    pub fn terms(self) -> Vec<Term> {
        use Inner::*;
        match self {
            Case::I => vec![Term::Ext(Gamma)],
            Case::II => vec![Term::Ext(TensorZ2)],
            Case::III => vec![Term::Hom(R)],
            Case::IV => vec![Term::Hom(Omega)],
            Case::V => vec![Term::Ext(TensorZ2), Term::Hom(TorZ2)],
            Case::VI => vec![Term::Ext(TorZ2), Term::Hom(TensorZ2)],
            Case::VII => vec![Term::Ext(Gamma), Term::Hom(TorZ2)],
            Case::VIII => vec![Term::LSharp, Term::Ext(TorZ2)],
            Case::IX => vec![Term::LambdaT, Term::Hom(TorZ2)],
            Case::X => vec![Term::GammaT],
            Case::XI => vec![],
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = ["I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX", "X", "XI"][*self as usize];
        write!(f, "({s})")
    }
}

/// The coefficient functor inside an `Ext(A, −)` or `Hom(A, −)` term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Inner {
    Gamma,
    R,
    Omega,
    Lambda2,
    TensorZ2,
    TorZ2,
    /// `B_i ⊗ B_j` (off-diagonal).
    Tensor,
    /// `B_i ∗ B_j` (off-diagonal).
    Tor,
}

impl Inner {
    pub fn eval(self, d: &CanonicalGroup, e: Option<&CanonicalGroup>) -> CanonicalGroup {
        let z2 = CanonicalGroup::cyclic(2);
        match self {
            Inner::Gamma => gamma(d),
            Inner::R => r_functor(d),
            Inner::Omega => omega(d),
            Inner::Lambda2 => lambda2(d),
            Inner::TensorZ2 => binary_functor(BinaryKind::Tensor, d, &z2),
            Inner::TorZ2 => binary_functor(BinaryKind::Tor, d, &z2),
            Inner::Tensor => binary_functor(BinaryKind::Tensor, d, e.expect("second argument")),
            Inner::Tor => binary_functor(BinaryKind::Tor, d, e.expect("second argument")),
        }
    }

    fn label(self, d: &str, e: &str) -> String {
        match self {
            Inner::Gamma => format!("Γ({d})"),
            Inner::R => format!("R({d})"),
            Inner::Omega => format!("Ω({d})"),
            Inner::Lambda2 => format!("Λ²({d})"),
            Inner::TensorZ2 => format!("{d}⊗Z₂"),
            Inner::TorZ2 => format!("{d}∗Z₂"),
            Inner::Tensor => format!("{d}⊗{e}"),
            Inner::Tor => format!("{d}∗{e}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Term {
    Ext(Inner),
    Hom(Inner),
    LambdaT,
    GammaT,
    LSharp,
    Trp,
}

impl Term {
    /// Display label with the given argument names.
    pub fn label(self, a: &str, d: &str, e: &str) -> String {
        match self {
            Term::Ext(i) => format!("Ext({a},{})", i.label(d, e)),
            Term::Hom(i) => format!("Hom({a},{})", i.label(d, e)),
            Term::LambdaT => format!("Λ²T#({a},{d})"),
            Term::GammaT => format!("ΓT#({a},{d})"),
            Term::LSharp => format!("L#({a},{d})"),
            Term::Trp => format!("Trp({a};{d},{e})"),
        }
    }

    pub fn eval(self, a: &CanonicalGroup, d: &CanonicalGroup, e: Option<&CanonicalGroup>) -> CanonicalGroup {
        match self {
            Term::Ext(i) => binary_functor(BinaryKind::Ext, a, &i.eval(d, e)),
            Term::Hom(i) => binary_functor(BinaryKind::Hom, a, &i.eval(d, e)),
            Term::LambdaT => bype_functor(BypeKind::LambdaT, a, d).group,
            Term::GammaT => bype_functor(BypeKind::GammaT, a, d).group,
            Term::LSharp => bype_functor(BypeKind::LSharp, a, d).group,
            Term::Trp => trp(a, d, e.expect("second argument")).group,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Origin {
    Diagonal { m: Degree, case: Case },
    OffDiagonal { i: Degree, j: Degree },
    Stable { k: Degree },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summand {
    pub term: Term,
    pub origin: Origin,
    pub label: String,
    pub group: CanonicalGroup,
}

/// A value of the Sq-calculus with its labeled direct-sum decomposition.
///
/// Summand coordinates are the canonical coordinates of each summand group;
/// [`SqValue::presentation`] is their block sum. Zero summands are kept so
/// labels stay attached to a case.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SqValue {
    pub group: CanonicalGroup,
    pub summands: Vec<Summand>,
}

impl SqValue {
    pub fn zero() -> Self {
        SqValue { group: CanonicalGroup::trivial(), summands: vec![] }
    }

    fn from_summands(summands: Vec<Summand>) -> Self {
        let group = CanonicalGroup::sum_all(summands.iter().map(|s| &s.group));
        SqValue { group, summands }
    }

    pub fn concat(mut self, other: SqValue) -> Self {
        self.summands.extend(other.summands);
        Self::from_summands(self.summands)
    }

    /// Block-diagonal presentation of the summands in order.
    pub fn presentation(&self) -> Presentation {
        self.summands.iter().fold(Presentation::free(0), |p, s| p.direct_sum(&s.group.presentation()))
    }

    /// Generator offset of each summand inside [`SqValue::presentation`].
    pub fn offsets(&self) -> Vec<usize> {
        let mut off = 0;
        self.summands
            .iter()
            .map(|s| {
                let o = off;
                off += s.group.num_generators();
                o
            })
            .collect()
    }

    /// Symbolic form, `0` for an empty decomposition.
    pub fn symbolic(&self) -> String {
        if self.summands.is_empty() {
            return "0".into();
        }
        self.summands.iter().map(|s| s.label.as_str()).collect::<Vec<_>>().join(" ⊕ ")
    }

    pub fn nonzero(&self) -> impl Iterator<Item = &Summand> {
        self.summands.iter().filter(|s| !s.group.is_trivial())
    }
}

/// Symbolic case value for `Sq_{n,m}(A, D)`.
pub fn sq_nm_symbolic(n: Degree, m: Degree) -> String {
    let terms = Case::select(n, m).terms();
    if terms.is_empty() {
        return "0".into();
    }
    terms.iter().map(|t| t.label("A", "D", "")).collect::<Vec<_>>().join(" ⊕ ")
}

fn check_m(m: Degree) -> Result<()> {
    if m < 1 {
        return Err(Error::InvalidArgument(format!("Sq_(n,m) needs m ≥ 1, got {m}")));
    }
    Ok(())
}

/// `Sq_{n,m}(A, D) = [C(A,n), Z^Λ₍#₎C(D,m)]` by case.
pub fn sq_nm(a: &CanonicalGroup, d: &CanonicalGroup, n: Degree, m: Degree) -> Result<SqValue> {
    check_m(m)?;
    let case = Case::select(n, m);
    let summands = case
        .terms()
        .into_iter()
        .map(|t| Summand {
            term: t,
            origin: Origin::Diagonal { m, case },
            label: t.label("A", "D", ""),
            group: t.eval(a, d, None),
        })
        .collect();
    Ok(SqValue::from_summands(summands))
}

/// The off-diagonal term `Sq_{n,i,j}(A; D, E) = [C(A,n), C(D,i)⊗C(E,j)]`.
pub fn sq_nij(a: &CanonicalGroup, d: &CanonicalGroup, e: &CanonicalGroup, n: Degree, i: Degree, j: Degree) -> Result<SqValue> {
    if !(1 <= i && i < j) {
        return Err(Error::InvalidArgument(format!("Sq_(n,i,j) needs 1 ≤ i < j, got i={i}, j={j}")));
    }
    let term = if n == i + j + 1 {
        Term::Hom(Inner::Tor)
    } else if n == i + j - 1 {
        Term::Ext(Inner::Tensor)
    } else if n == i + j {
        Term::Trp
    } else {
        return Ok(SqValue::zero());
    };
    let (bi, bj) = (format!("B{i}"), format!("B{j}"));
    Ok(SqValue::from_summands(vec![Summand {
        term,
        origin: Origin::OffDiagonal { i, j },
        label: term.label("A", &bi, &bj),
        group: term.eval(a, d, Some(e)),
    }]))
}

/// `Sq_n(A, B)`: diagonal terms in ascending `m`, then pairs `i < j`
/// in lexicographic order.
pub fn sq_full(a: &CanonicalGroup, b: &GradedGroup, n: Degree) -> Result<SqValue> {
    if let Some(lo) = b.min_degree() {
        if lo < 1 {
            return Err(Error::InvalidArgument(format!("graded group must live in degrees ≥ 1, has degree {lo}")));
        }
    }
    let mut v = SqValue::zero();
    for m in b.degrees() {
        let mut s = sq_nm(a, &b.get(m), n, m)?;
        for x in &mut s.summands {
            x.label = x.label.replace('D', &format!("B{m}"));
        }
        v = v.concat(s);
    }
    let degs = b.degrees();
    for (p, &i) in degs.iter().enumerate() {
        for &j in &degs[p + 1..] {
            v = v.concat(sq_nij(a, &b.get(i), &b.get(j), n, i, j)?);
        }
    }
    Ok(v)
}

/// `Sq_n(B) = Sq_n(Z, B)`.
pub fn sq_of(b: &GradedGroup, n: Degree) -> Result<SqValue> {
    sq_full(&CanonicalGroup::z(), b, n)
}

/// The terms of the stable operator in degree `k ≥ 1`.
pub fn stable_terms(k: Degree) -> [Term; 2] {
    if k % 2 == 0 {
        [Term::Ext(Inner::TensorZ2), Term::Hom(Inner::TorZ2)]
    } else {
        [Term::Ext(Inner::TorZ2), Term::Hom(Inner::TensorZ2)]
    }
}

pub fn stable_sq(a: &CanonicalGroup, d: &CanonicalGroup, k: Degree) -> Result<SqValue> {
    if k < 1 {
        return Err(Error::InvalidArgument(format!("stable operator needs k ≥ 1, got {k}")));
    }
    let summands = stable_terms(k)
        .into_iter()
        .map(|t| Summand { term: t, origin: Origin::Stable { k }, label: t.label("A", "D", ""), group: t.eval(a, d, None) })
        .collect();
    Ok(SqValue::from_summands(summands))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SummandFate {
    /// Same term in the stable value, at this index.
    Matched(usize),
    Unstable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Stabilization {
    Identity { value: SqValue },
    Compare { unstable: SqValue, stable: SqValue, fates: Vec<SummandFate> },
}

/// Compares `Sq_{n,m}(A, D)` with `Sq^stable_{n−m}(A, D)` summand by summand.
pub fn stabilize(a: &CanonicalGroup, d: &CanonicalGroup, n: Degree, m: Degree) -> Result<Stabilization> {
    check_m(m)?;
    let k = n - m;
    if k < 1 {
        return Err(Error::InvalidArgument(format!("no stable operator for k = {k}; stabilization needs k ≥ 1")));
    }
    let unstable = sq_nm(a, d, n, m)?;
    let stable = stable_sq(a, d, k)?;
    if k < m - 1 {
        debug_assert_eq!(unstable.group, stable.group);
        return Ok(Stabilization::Identity { value: unstable });
    }
    let fates = unstable
        .summands
        .iter()
        .map(|s| match stable.summands.iter().position(|t| t.term == s.term) {
            Some(p) => SummandFate::Matched(p),
            None => SummandFate::Unstable,
        })
        .collect();
    Ok(Stabilization::Compare { unstable, stable, fates })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::int;

    fn g(s: &[u64]) -> CanonicalGroup {
        CanonicalGroup::from_orders(0, &s.iter().map(|&x| int(x as i64)).collect::<Vec<_>>())
    }

    #[test]
    fn case_examples() {
        let z = CanonicalGroup::z();
        assert_eq!(sq_nm(&z, &g(&[2]), 2, 1).unwrap().group, g(&[4]));
        assert_eq!(sq_nm(&g(&[2]), &g(&[2]), 3, 3).unwrap().group, g(&[2]));
        assert!(sq_nm(&z, &g(&[6]), 9, 3).unwrap().group.is_trivial());
        assert_eq!(Case::select(9, 3), Case::XI);
    }

    #[test]
    fn off_diagonal_examples() {
        let z = CanonicalGroup::z();
        assert_eq!(sq_nij(&z, &g(&[2]), &g(&[4]), 6, 2, 3).unwrap().group, g(&[2]));
        assert!(sq_nij(&g(&[2]), &g(&[2]), &g(&[3]), 3, 1, 2).unwrap().group.is_trivial());
        assert!(sq_nij(&z, &z, &z, 9, 1, 2).unwrap().summands.is_empty());
    }

    #[test]
    fn full_decomposition() {
        let z = CanonicalGroup::z();
        let b = GradedGroup::from_pairs([(1, z.clone()), (2, z.clone())]);
        let v = sq_full(&z, &b, 3).unwrap();
        assert_eq!(v.group, CanonicalGroup::from_orders(1, &[int(2)]));
        assert_eq!(v.nonzero().count(), 2);
    }

    #[test]
    fn stable_examples() {
        let z = CanonicalGroup::z();
        assert_eq!(stable_sq(&z, &g(&[4]), 2).unwrap().group, g(&[2]));
        assert_eq!(stable_sq(&z, &z, 3).unwrap().group, g(&[2]));
        assert!(stable_sq(&g(&[2]), &g(&[3]), 5).unwrap().group.is_trivial());
        assert!(matches!(stabilize(&z, &z, 5, 4).unwrap(), Stabilization::Identity { .. }));
        let Stabilization::Compare { fates, .. } = stabilize(&z, &z, 4, 2).unwrap() else { panic!() };
        assert_eq!(fates, vec![SummandFate::Unstable, SummandFate::Matched(1)]);
        assert!(stabilize(&z, &z, 3, 3).is_err());
    }
}
