mod common;

use nilquad::abelian::{binary_functor, BinaryKind, CanonicalGroup, ExtClass};
use nilquad::chaincx::{moore_complex, Degree};
use nilquad::doldkan::m_sharp_oracle;
use nilquad::quadratic::QuadraticZModule;
use nilquad::sqcalc::*;
use proptest::prelude::*;

fn c(d: u64) -> CanonicalGroup {
    CanonicalGroup::cyclic(d)
}

fn small_groups() -> Vec<CanonicalGroup> {
    vec![CanonicalGroup::trivial(), CanonicalGroup::z(), c(2), c(3), c(4), c(6), CanonicalGroup::z().direct_sum(&c(2))]
}

#[test]
fn closed_form_matches_oracle_low_degrees() {
    let l = QuadraticZModule::lambda();
    let z = CanonicalGroup::z();
    for d in small_groups() {
        for m in 1..=3 {
            for k in 0..=m + 1 {
                let n = m + k;
                let closed = sq_nm(&z, &d, n, m).unwrap();
                let oracle = m_sharp_oracle(&moore_complex(&d, m), &l, n as usize).unwrap();
                assert_eq!(closed.group, oracle, "D={d} m={m} n={n} {}", closed.symbolic());
            }
        }
    }
}

#[test]
fn chain_level_pseudo_homology_matches() {
    for a in [CanonicalGroup::z(), c(2), c(4)] {
        for d in [c(2), c(3)] {
            for m in 1..=2 {
                for n in 1..=m + 3 {
                    let closed = sq_nm(&a, &d, n, m).unwrap();
                    let chain = sq_nm_chain(&a, &d, n, m).unwrap();
                    assert_eq!(&closed.group, chain.group(), "A={a} D={d} n={n} m={m}");
                }
            }
        }
    }
}

#[test]
fn bype_sequences_have_matching_ends() {
    let gs = [CanonicalGroup::z(), c(2), c(4), c(3), c(2).direct_sum(&c(2))];
    for a in &gs {
        for b in &gs {
            for kind in [BypeKind::LambdaT, BypeKind::GammaT, BypeKind::LSharp] {
                let v = bype_functor(kind, a, b);
                assert!(v.orders_consistent(), "{kind:?}({a},{b})");
                assert_eq!(bype_ends(kind, a, b), (v.ext.clone(), v.hom.clone()), "{kind:?}({a},{b})");
            }
            for e in &gs {
                let t = trp(a, b, e);
                let ext = binary_functor(BinaryKind::Ext, a, &binary_functor(BinaryKind::Tor, b, e));
                let hom = binary_functor(BinaryKind::Hom, a, &binary_functor(BinaryKind::Tensor, b, e));
                assert_eq!((t.ext.clone(), t.hom.clone()), (ext, hom));
                assert!(t.orders_consistent());
            }
        }
    }
}

#[test]
fn ext_induced_is_additive() {
    for (a, b) in [(c(2), c(2)), (c(4), c(2)), (c(2), c(4)), (c(4), c(4))] {
        let all = ExtClass::all(&a, &b).unwrap();
        for (k, n) in [(2, 1), (2, 2), (2, 3), (3, 2), (3, 3), (3, 4)] {
            for x in &all {
                for y in &all {
                    let lhs = ext_induced(k, n, &x.add(y)).unwrap();
                    let rhs = ext_induced(k, n, x).unwrap().add(&ext_induced(k, n, y).unwrap()).unwrap();
                    assert!(lhs.equals(&rhs), "^{k}[{n}] on {a}, {b}");
                }
            }
        }
    }
}

#[test]
fn stable_range_is_stable() {
    let z = CanonicalGroup::z();
    for d in small_groups() {
        for m in 3..=6 {
            for k in 1..m - 1 {
                let u = sq_nm(&z, &d, m + k, m).unwrap();
                let s = stable_sq(&z, &d, k).unwrap();
                let terms = |v: &SqValue| v.summands.iter().map(|x| (x.term, x.group.clone())).collect::<Vec<_>>();
                assert_eq!(terms(&u), terms(&s));
            }
        }
    }
}

proptest! {
    #[test]
    fn case_dispatch_is_total_and_exclusive(m in 1i64..40, k in -5i64..45) {
        let hits: Vec<Case> = Case::ALL.iter().copied().filter(|c| c.condition(k, m)).collect();
        // (I) and (VII) share the corner m = 1, k = 0; (I) takes precedence.
        if (m, k) == (1, 0) {
            prop_assert_eq!(hits, vec![Case::I, Case::VII]);
        } else {
            prop_assert_eq!(hits.len(), 1);
        }
        prop_assert_eq!(Case::select(m + k, m), *Case::ALL.iter().find(|c| c.condition(k, m)).unwrap());
    }

    #[test]
    fn extension_values_multiply(seed in any::<u64>()) {
        use rand::Rng;
        let mut r = common::rng(seed);
        let pick = |r: &mut rand_chacha::ChaCha8Rng| {
            let gs = [CanonicalGroup::z(), c(2), c(4), c(3), c(6), c(8)];
            gs[r.gen_range(0..gs.len())].clone()
        };
        let (a, d) = (pick(&mut r), pick(&mut r));
        let m: Degree = r.gen_range(1..=5);
        let n: Degree = m + r.gen_range(0..=m + 2);
        let v = sq_nm(&a, &d, n, m).unwrap();
        for s in &v.summands {
            let kind = match s.term {
                Term::LambdaT => BypeKind::LambdaT,
                Term::GammaT => BypeKind::GammaT,
                Term::LSharp => BypeKind::LSharp,
                _ => continue,
            };
            let (e, h) = bype_ends(kind, &a, &d);
            if let (Some(x), Some(y), Some(z)) = (s.group.order(), e.order(), h.order()) {
                prop_assert_eq!(x, y * z);
            }
        }
    }
}
