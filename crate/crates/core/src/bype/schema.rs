//! Versioned JSON files for bypes, stable bypes, `F`-modules and graded
//! homomorphisms. [`load`] is the single entry point.
//!
//! Groups are group expressions, integer matrices are row lists of decimal
//! strings, `Z₂` matrices row lists of `0`/`1`. `b_n` and `β_n` use the
//! canonical coordinates of `Sq_{n−1}(B)` and `Sq_{n−1}(B_n, B)` as computed
//! by [`SqModel`](super::SqModel).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::f2::F2Matrix;
use super::fmodule::FModule;
use super::homological::{Bype, GradedHom};
use super::stable::StableBype;
use crate::abelian::{Homomorphism, IntMatrix};
use crate::chaincx::{Degree, GradedGroup};
use crate::error::{Error, Result};
use crate::expr::{format_group, parse_group_expr};

pub const BYPE: &str = "nilquad.bype/1";
pub const STABLE: &str = "nilquad.stable-bype/1";
pub const FMODULE: &str = "nilquad.fmodule/1";
pub const HOM: &str = "nilquad.graded-hom/1";

#[derive(Clone, Debug)]
pub enum Document {
    Bype(Bype),
    Stable(StableBype),
    FModule(FModule),
    Hom(GradedHom),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Bype(_) => BYPE,
            Document::Stable(_) => STABLE,
            Document::FModule(_) => FMODULE,
            Document::Hom(_) => HOM,
        }
    }
}

type Groups = BTreeMap<Degree, String>;
type Rows = Vec<Vec<String>>;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BypeFile {
    schema: String,
    #[serde(rename = "B")]
    groups: Groups,
    #[serde(default)]
    b: BTreeMap<Degree, Rows>,
    #[serde(default)]
    beta: BTreeMap<Degree, Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Entry {
    n: Degree,
    k: Degree,
    matrix: Vec<Vec<u8>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StableFile {
    schema: String,
    #[serde(rename = "B")]
    groups: Groups,
    #[serde(default)]
    b: Vec<Entry>,
    #[serde(default)]
    beta: Vec<Entry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FModuleFile {
    schema: String,
    #[serde(rename = "H")]
    groups: Groups,
    #[serde(rename = "H2")]
    h2: BTreeMap<Degree, usize>,
    delta: BTreeMap<Degree, Vec<Vec<u8>>>,
    mu: BTreeMap<Degree, Vec<Vec<u8>>>,
    #[serde(default)]
    sq: Vec<Entry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HomFile {
    schema: String,
    #[serde(rename = "source")]
    source: Groups,
    #[serde(rename = "target")]
    target: Groups,
    phi: BTreeMap<Degree, Rows>,
}

#[derive(Deserialize)]
struct Header {
    schema: String,
}

fn groups_in(g: &Groups) -> Result<GradedGroup> {
    let mut out = GradedGroup::new();
    for (&n, s) in g {
        out.set(n, parse_group_expr(s).map_err(|e| Error::Serde(format!("B_{n}: {e}")))?);
    }
    Ok(out)
}

fn groups_out(g: &GradedGroup) -> Groups {
    g.iter().map(|(n, x)| (n, format_group(x))).collect()
}

fn ints_in(v: &[String]) -> Result<Vec<BigInt>> {
    v.iter().map(|s| s.trim().parse::<BigInt>().map_err(|_| Error::Serde(format!("not an integer: {s:?}")))).collect()
}

fn entries_in(
    v: Vec<Entry>,
    shape: impl Fn(Degree, Degree) -> (usize, usize),
) -> Result<BTreeMap<(Degree, Degree), F2Matrix>> {
    let mut out = BTreeMap::new();
    for e in v {
        let (r, c) = shape(e.n, e.k);
        let m = F2Matrix::from_rows(&e.matrix, c)?;
        if m.shape() != (r, c) {
            return Err(Error::Dimension(format!("entry ({}, {}) is {:?}, needs {:?}", e.n, e.k, m.shape(), (r, c))));
        }
        if out.insert((e.n, e.k), m).is_some() {
            return Err(Error::Serde(format!("entry ({}, {}) given twice", e.n, e.k)));
        }
    }
    Ok(out)
}

fn entries_out(m: &BTreeMap<(Degree, Degree), F2Matrix>) -> Vec<Entry> {
    m.iter().map(|(&(n, k), x)| Entry { n, k, matrix: x.to_rows() }).collect()
}

fn f2_in(rows: &[Vec<u8>], shape: (usize, usize), what: &str) -> Result<F2Matrix> {
    let m = F2Matrix::from_rows(rows, shape.1)?;
    if m.shape() != shape {
        return Err(Error::Dimension(format!("{what} is {:?}, needs {:?}", m.shape(), shape)));
    }
    Ok(m)
}

/// Parses any of the four document kinds, dispatching on `schema`.
pub fn load(json: &str) -> Result<Document> {
    let h: Header = serde_json::from_str(json)?;
    match h.schema.as_str() {
        BYPE => {
            let f: BypeFile = serde_json::from_str(json)?;
            let groups = groups_in(&f.groups)?;
            let mut b = BTreeMap::new();
            for (n, rows) in &f.b {
                let cols = groups.get(*n).num_generators();
                b.insert(*n, IntMatrix::from_strings(rows, cols)?);
            }
            let beta = f.beta.iter().map(|(&n, v)| Ok((n, ints_in(v)?))).collect::<Result<_>>()?;
            Ok(Document::Bype(Bype { groups, b, beta }))
        }
        STABLE => {
            let f: StableFile = serde_json::from_str(json)?;
            let mut s = StableBype::zero(groups_in(&f.groups)?);
            s.b = entries_in(f.b, |n, k| s.b_shape(n, k))?;
            s.beta = entries_in(f.beta, |n, k| s.beta_shape(n, k))?;
            s.validate()?;
            Ok(Document::Stable(s))
        }
        FMODULE => {
            let f: FModuleFile = serde_json::from_str(json)?;
            let h = groups_in(&f.groups)?;
            let canon = FModule::split(h.clone());
            let mut out = FModule { h, h2: f.h2.clone(), ..Default::default() };
            for (&n, rows) in &f.delta {
                out.delta.insert(n, f2_in(rows, (out.dim(n), canon.delta.get(&n).map_or(0, F2Matrix::cols)), "Δ")?);
            }
            for (&n, rows) in &f.mu {
                out.mu.insert(n, f2_in(rows, (canon.mu.get(&n).map_or(0, F2Matrix::rows), out.dim(n)), "μ")?);
            }
            let dims = out.h2.clone();
            let dim = |n: Degree| dims.get(&n).copied().unwrap_or(0);
            out.sq = entries_in(f.sq, |n, k| (dim(n - k), dim(n)))?;
            out.validate()?;
            Ok(Document::FModule(out))
        }
        HOM => {
            let f: HomFile = serde_json::from_str(json)?;
            let (src, tgt) = (groups_in(&f.source)?, groups_in(&f.target)?);
            let mut phi = GradedHom::new();
            for (&n, rows) in &f.phi {
                let (a, b) = (src.get(n), tgt.get(n));
                let m = IntMatrix::from_strings(rows, a.num_generators())?;
                phi.insert(n, Homomorphism::between(&a, &b, m)?);
            }
            Ok(Document::Hom(phi))
        }
        other => Err(Error::Serde(format!("unknown schema {other:?}; expected one of {BYPE}, {STABLE}, {FMODULE}, {HOM}"))),
    }
}

pub fn bype_to_json(x: &Bype) -> String {
    let f = BypeFile {
        schema: BYPE.into(),
        groups: groups_out(&x.groups),
        b: x.b.iter().map(|(&n, m)| (n, m.to_strings())).collect(),
        beta: x.beta.iter().map(|(&n, v)| (n, v.iter().map(ToString::to_string).collect())).collect(),
    };
    serde_json::to_string_pretty(&f).expect("serializable")
}

pub fn stable_to_json(s: &StableBype) -> String {
    let f = StableFile {
        schema: STABLE.into(),
        groups: groups_out(&s.groups),
        b: entries_out(&s.b),
        beta: entries_out(&s.beta),
    };
    serde_json::to_string_pretty(&f).expect("serializable")
}

pub fn fmodule_to_json(m: &FModule) -> String {
    let f = FModuleFile {
        schema: FMODULE.into(),
        groups: groups_out(&m.h),
        h2: m.h2.clone(),
        delta: m.delta.iter().map(|(&n, x)| (n, x.to_rows())).collect(),
        mu: m.mu.iter().map(|(&n, x)| (n, x.to_rows())).collect(),
        sq: entries_out(&m.sq),
    };
    serde_json::to_string_pretty(&f).expect("serializable")
}

pub fn hom_to_json(source: &GradedGroup, target: &GradedGroup, phi: &GradedHom) -> String {
    let f = HomFile {
        schema: HOM.into(),
        source: groups_out(source),
        target: groups_out(target),
        phi: phi.iter().map(|(&n, h)| (n, h.gen_matrix.to_strings())).collect(),
    };
    serde_json::to_string_pretty(&f).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::CanonicalGroup;
    use crate::bype::theta;

    #[test]
    fn round_trips() {
        let b = GradedGroup::from_pairs([(2, CanonicalGroup::cyclic(2)), (4, CanonicalGroup::cyclic(4))]);
        let mut s = StableBype::zero(b.clone());
        s.b.insert((4, 2), F2Matrix::identity(1));
        assert!(matches!(load(&stable_to_json(&s)).unwrap(), Document::Stable(t) if t == s));
        let f = theta(&s).unwrap();
        assert!(matches!(load(&fmodule_to_json(&f)).unwrap(), Document::FModule(g) if g == f));
        let mut x = Bype::zero(b.clone());
        x.beta.insert(4, vec![BigInt::from(1)]);
        assert!(matches!(load(&bype_to_json(&x)).unwrap(), Document::Bype(y) if y == x));
        let id = crate::bype::identity_hom(&b);
        let Document::Hom(got) = load(&hom_to_json(&b, &b, &id)).unwrap() else { panic!("kind") };
        assert!(got.keys().eq(id.keys()) && got.iter().all(|(n, h)| h.equals(&id[n])));
    }

    #[test]
    fn rejects_unknown_schema_and_bad_shapes() {
        assert!(matches!(load(r#"{"schema": "nilquad.bype/9", "B": {}}"#), Err(Error::Serde(_))));
        let bad = r#"{"schema": "nilquad.stable-bype/1", "B": {"2": "Z/2", "4": "Z/2"},
                      "b": [{"n": 4, "k": 2, "matrix": [[1, 1]]}]}"#;
        assert!(matches!(load(bad), Err(Error::Dimension(_))));
    }
}
